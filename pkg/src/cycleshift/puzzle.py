"""Puzzle instances, token placements and the shift operation.

A placement is a tuple of colors indexed by vertex (``f[v - 1]`` is the color
on vertex ``v``).  A forward shift along cycle ``(v1 v2 ... vj)`` acts on a
placement as ``f -> f o sigma`` with ``sigma = (v1 v2 ... vj)``: the token on
``sigma(v)`` moves to ``v``.  Tokens therefore travel *against* the listed
order of the cycle under a forward shift; a backward shift moves each token to
the next vertex of the list.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from operator import itemgetter
from typing import Iterable, NamedTuple, Sequence

from .perm import Perm, compose, from_cycles, inverse

Placement = tuple[int, ...]


class ShiftMove(NamedTuple):
    cycle: int
    forward: bool = True

    def inverse(self) -> "ShiftMove":
        return ShiftMove(self.cycle, not self.forward)

    def to_json(self) -> dict:
        return {"cycle": self.cycle, "dir": "F" if self.forward else "B"}

    @classmethod
    def from_json(cls, obj: dict) -> "ShiftMove":
        d = obj["dir"]
        if d not in ("F", "B"):
            raise ValueError(f"bad direction {d!r}")
        return cls(int(obj["cycle"]), d == "F")


ShiftSequence = list[ShiftMove]


def invert_sequence(seq: Sequence[ShiftMove]) -> ShiftSequence:
    return [m.inverse() for m in reversed(seq)]


@dataclass(frozen=True)
class Puzzle:
    n: int
    cycles: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, cycles: Iterable[Sequence[int]]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "cycles", tuple(tuple(int(v) for v in c) for c in cycles))

    def validate(self) -> list[str]:
        """Invariant violations; an empty list means the puzzle is well formed."""
        problems = []
        if self.n < 1:
            problems.append("vertex count must be positive")
        if not self.cycles:
            problems.append("no cycles")
        for i, cyc in enumerate(self.cycles):
            if len(cyc) < 2:
                problems.append(f"cycle {i} has fewer than 2 vertices")
            bad = [v for v in cyc if not 1 <= v <= self.n]
            if bad:
                problems.append(f"cycle {i} has out-of-range labels {bad}")
            dup = sorted(v for v, k in Counter(cyc).items() if k > 1)
            if dup:
                problems.append(f"cycle {i} has duplicate vertex {','.join(map(str, dup))}")
        covered = {v for c in self.cycles for v in c}
        missing = [v for v in range(1, self.n + 1) if v not in covered]
        if missing:
            problems.append(f"vertices {','.join(map(str, missing))} uncovered")
        return problems

    def check(self) -> "Puzzle":
        problems = self.validate()
        if problems:
            raise ValueError("invalid puzzle: " + "; ".join(problems))
        return self

    @cached_property
    def _perms(self) -> list[tuple[Perm, Perm]]:
        out = []
        for cyc in self.cycles:
            p = from_cycles(self.n, [cyc])
            out.append((p, inverse(p)))
        return out

    @cached_property
    def _getters(self) -> dict[ShiftMove, itemgetter]:
        out = {}
        for i, (fwd, bwd) in enumerate(self._perms):
            for forward, p in ((True, fwd), (False, bwd)):
                out[ShiftMove(i, forward)] = itemgetter(*(x - 1 for x in p.image))
        return out

    def moves(self) -> list[ShiftMove]:
        return [ShiftMove(i, d) for i in range(len(self.cycles)) for d in (True, False)]

    def shift_permutation(self, move: ShiftMove) -> Perm:
        if not 0 <= move.cycle < len(self.cycles):
            raise IndexError(f"no cycle with index {move.cycle}")
        fwd, bwd = self._perms[move.cycle]
        return fwd if move.forward else bwd

    def sequence_permutation(self, seq: Iterable[ShiftMove]) -> Perm:
        result = Perm.identity(self.n)
        for m in seq:
            result = compose(result, self.shift_permutation(m))
        return result

    def edges(self) -> set[frozenset[int]]:
        out = set()
        for cyc in self.cycles:
            for i, v in enumerate(cyc):
                w = cyc[(i + 1) % len(cyc)]
                if v != w:
                    out.add(frozenset((v, w)))
        return out


def identity_placement(n: int) -> Placement:
    return tuple(range(1, n + 1))


def check_placement(f: Sequence[int], n: int | None = None) -> Placement:
    f = tuple(int(c) for c in f)
    if n is not None and len(f) != n:
        raise ValueError(f"placement has {len(f)} entries, puzzle has {n} vertices")
    colors = set(f)
    if colors != set(range(1, len(colors) + 1)):
        raise ValueError(f"placement colors must be exactly 1..c, got {sorted(colors)}")
    return f


def apply_shift(f: Placement, puzzle: Puzzle, move: ShiftMove) -> Placement:
    if len(f) != puzzle.n:
        raise ValueError(f"placement size {len(f)} != puzzle size {puzzle.n}")
    if not 0 <= move.cycle < len(puzzle.cycles):
        raise IndexError(f"no cycle with index {move.cycle}")
    return puzzle._getters[move](f)


def apply_sequence(f: Placement, puzzle: Puzzle, seq: Iterable[ShiftMove]) -> Placement:
    if len(f) != puzzle.n:
        raise ValueError(f"placement size {len(f)} != puzzle size {puzzle.n}")
    getters = puzzle._getters
    f = tuple(f)
    for m in seq:
        try:
            f = getters[m](f)
        except KeyError:
            raise IndexError(f"invalid move {m}") from None
    return f


def compatible(f1: Sequence[int], f2: Sequence[int]) -> bool:
    if len(f1) != len(f2):
        raise ValueError("placements have different sizes")
    return Counter(f1) == Counter(f2)


def placement_of(perm: Perm) -> Placement:
    """A permutation read as a full-color placement."""
    return perm.image


def peephole(seq: Iterable[ShiftMove], puzzle: Puzzle | None = None) -> ShiftSequence:
    """Cancel adjacent mutually inverse moves (including 2-cycle double shifts)."""
    out: ShiftSequence = []
    for m in seq:
        if out and out[-1].cycle == m.cycle and (
            out[-1].forward != m.forward
            or (puzzle is not None and len(puzzle.cycles[m.cycle]) == 2)
        ):
            out.pop()
        else:
            out.append(m)
    return out


@dataclass
class Instance:
    """A puzzle with start/target placements and an optional shift budget."""

    puzzle: Puzzle
    start: Placement
    target: Placement
    budget: int | None = None
    roles: dict | None = field(default=None)

    @property
    def colors(self) -> int:
        return len(set(self.start))

    def to_json_obj(self) -> dict:
        obj = {
            "n": self.puzzle.n,
            "cycles": [list(c) for c in self.puzzle.cycles],
            "colors": self.colors,
            "start": list(self.start),
            "target": list(self.target),
            "budget": self.budget,
        }
        if self.roles is not None:
            obj["roles"] = self.roles
        return obj

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Instance":
        try:
            puzzle = Puzzle(obj["n"], obj["cycles"])
            start = check_placement(obj["start"], puzzle.n)
            target = check_placement(obj["target"], puzzle.n)
        except KeyError as exc:
            raise ValueError(f"instance is missing field {exc.args[0]!r}") from None
        problems = puzzle.validate()
        if problems:
            raise ValueError("invalid puzzle: " + "; ".join(problems))
        if "colors" in obj and obj["colors"] != len(set(start)):
            raise ValueError(f"colors={obj['colors']} but start uses {len(set(start))}")
        if not compatible(start, target):
            raise ValueError("start and target placements are not compatible")
        budget = obj.get("budget")
        if budget is not None and (not isinstance(budget, int) or budget < 0):
            raise ValueError("budget must be a non-negative integer or null")
        return cls(puzzle, start, target, budget, obj.get("roles"))

    @classmethod
    def loads(cls, text: str) -> "Instance":
        return cls.from_json_obj(json.loads(text))
