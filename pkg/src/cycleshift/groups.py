"""Base and strong generating set for permutation groups.

Deterministic Schreier-Sims: base points are taken in increasing label order,
Schreier generators are scanned in a fixed order.  The stabilizer chain is
used as an oracle for group order and membership only; no words in the
generators are produced here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .perm import Perm, compose, inverse
from .puzzle import Puzzle

__all__ = ["StrongGeneratingData", "build", "order", "contains", "component_count"]


@dataclass
class _Level:
    point: int
    gens: list[Perm] = field(default_factory=list)
    # transversal[x] maps the base point to x
    transversal: dict[int, Perm] = field(default_factory=dict)

    def recompute_orbit(self, n: int) -> None:
        trans = {self.point: Perm.identity(n)}
        queue = [self.point]
        for x in queue:
            ux = trans[x]
            for s in self.gens:
                y = s(x)
                if y not in trans:
                    trans[y] = compose(s, ux)
                    queue.append(y)
        self.transversal = trans


@dataclass
class StrongGeneratingData:
    n: int
    levels: list[_Level]
    generators: list[Perm]

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def orbit_sizes(self) -> list[int]:
        return [len(lv.transversal) for lv in self.levels]

    def order(self) -> int:
        return math.prod(self.orbit_sizes())

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        """Strip ``g`` through the chain; returns the residue and the level it stopped at."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            b = g(lv.point)
            u = lv.transversal.get(b)
            if u is None:
                return g, i
            g = compose(inverse(u), g)
        return g, len(self.levels)

    def contains(self, p: Perm) -> bool:
        if p.n != self.n:
            raise ValueError(f"degree mismatch: {p.n} != {self.n}")
        residue, _ = self.sift(p)
        return residue.is_identity()


def _first_moved(p: Perm, avoid: Sequence[int] = ()) -> int:
    for v in range(1, p.n + 1):
        if p(v) != v and v not in avoid:
            return v
    raise ValueError("identity has no moved point")


def build(generators: Sequence[Perm]) -> StrongGeneratingData:
    gens = list(generators)
    if not gens:
        raise ValueError("empty generator list")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise ValueError("generators have different degrees")
    nontrivial = [g for g in gens if not g.is_identity()]
    data = StrongGeneratingData(n, [], gens)
    if not nontrivial:
        return data

    def add_level(g: Perm) -> None:
        base = data.base
        moved = [v for v in range(1, n + 1) if g(v) != v and v not in base]
        data.levels.append(_Level(min(moved)))

    for g in nontrivial:
        if all(g(b) == b for b in data.base):
            add_level(g)
    base = data.base
    for i, lv in enumerate(data.levels):
        lv.gens = [g for g in nontrivial if all(g(b) == b for b in base[:i])]
        lv.recompute_orbit(n)

    i = len(data.levels) - 1
    while i >= 0:
        lv = data.levels[i]
        found = None
        for x, ux in list(lv.transversal.items()):
            for s in lv.gens:
                y = s(x)
                schreier = compose(inverse(lv.transversal[y]), compose(s, ux))
                if schreier.is_identity():
                    continue
                residue, j = data.sift(schreier, i + 1)
                if not residue.is_identity():
                    found = (residue, j)
                    break
            if found:
                break
        if found is None:
            i -= 1
            continue
        residue, j = found
        if j == len(data.levels):
            add_level(residue)
        for level in data.levels[i + 1 : j + 1]:
            level.gens.append(residue)
            level.recompute_orbit(n)
        i = j
    return data


def order(data: StrongGeneratingData) -> int:
    return data.order()


def contains(data: StrongGeneratingData, p: Perm) -> bool:
    return data.contains(p)


def puzzle_group(puzzle: Puzzle) -> StrongGeneratingData:
    return build([puzzle.shift_permutation(m) for m in puzzle.moves() if m.forward])


def component_count(puzzle: Puzzle) -> int:
    """Connected components of the full-color token-shifting graph."""
    return math.factorial(puzzle.n) // puzzle_group(puzzle).order()
