"""Puzzle family recognition and configuration-group classification."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations

from . import groups
from .perm import Perm, compose, cycle_decomposition, from_cycles
from .puzzle import Puzzle

__all__ = [
    "Connection",
    "InterconnectionEdge",
    "InterconnectionGraph",
    "FamilyKind",
    "PuzzleFamily",
    "GroupKind",
    "GroupClass",
    "consecutive_in",
    "properly_interconnected",
    "interconnection_graph",
    "find_relevant_set",
    "is_relevant_set",
    "detect_family",
    "classify",
    "psi_image",
    "special44_member",
    "PSI_TRANSPOSITIONS",
]


class Connection(Enum):
    ONE_VERTEX = "one-vertex"
    TWO_ADJACENT = "two-adjacent"


def consecutive_in(cycle, x: int, y: int) -> bool:
    """True if ``x`` and ``y`` are cyclically adjacent in ``cycle`` (either order)."""
    k = len(cycle)
    i = cycle.index(x)
    return cycle[(i + 1) % k] == y or cycle[(i - 1) % k] == y


def properly_interconnected(c1, c2) -> Connection | None:
    shared = set(c1) & set(c2)
    if len(shared) == 1:
        return Connection.ONE_VERTEX
    if len(shared) == 2:
        x, y = sorted(shared)
        if consecutive_in(c1, x, y) and consecutive_in(c2, x, y):
            return Connection.TWO_ADJACENT
    return None


@dataclass(frozen=True)
class InterconnectionEdge:
    i: int
    j: int
    shared: frozenset[int]
    kind: Connection


@dataclass
class InterconnectionGraph:
    size: int
    edges: list[InterconnectionEdge]

    def neighbors(self, i: int) -> list[int]:
        out = []
        for e in self.edges:
            if e.i == i:
                out.append(e.j)
            elif e.j == i:
                out.append(e.i)
        return sorted(out)

    def edge(self, i: int, j: int) -> InterconnectionEdge | None:
        a, b = min(i, j), max(i, j)
        for e in self.edges:
            if (e.i, e.j) == (a, b):
                return e
        return None

    def is_connected(self, nodes) -> bool:
        nodes = set(nodes)
        if not nodes:
            return False
        start = min(nodes)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self.neighbors(x):
                if y in nodes and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen == nodes

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for s in range(self.size):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            for x in comp:
                for y in self.neighbors(x):
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
            out.append(sorted(comp))
        return out


def interconnection_graph(puzzle: Puzzle) -> InterconnectionGraph:
    edges = []
    for i, j in combinations(range(len(puzzle.cycles)), 2):
        ci, cj = puzzle.cycles[i], puzzle.cycles[j]
        kind = properly_interconnected(ci, cj)
        if kind is not None:
            edges.append(InterconnectionEdge(i, j, frozenset(set(ci) & set(cj)), kind))
    return InterconnectionGraph(len(puzzle.cycles), edges)


class FamilyKind(Enum):
    ONE_CONNECTED = "1-connected"
    TWO_CONNECTED = "2-connected"
    GENERALIZED = "generalized"
    UNRECOGNIZED = "unrecognized"


@dataclass(frozen=True)
class PuzzleFamily:
    kind: FamilyKind
    a: int | None = None
    b: int | None = None
    relevant: tuple[int, ...] = ()

    def describe(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.a is not None:
            out["a"], out["b"] = self.a, self.b
        if self.kind is FamilyKind.GENERALIZED:
            out["relevant"] = list(self.relevant)
        return out


def _covers(puzzle: Puzzle, subset) -> bool:
    covered = {v for i in subset for v in puzzle.cycles[i]}
    return len(covered) == puzzle.n and covered == set(range(1, puzzle.n + 1))


def is_relevant_set(puzzle: Puzzle, subset, graph: InterconnectionGraph | None = None) -> bool:
    """Check the three conditions on a candidate set of relevant cycles."""
    graph = graph or interconnection_graph(puzzle)
    subset = set(subset)
    return len(subset) >= 2 and graph.is_connected(subset) and _covers(puzzle, subset)


def find_relevant_set(puzzle: Puzzle) -> tuple[int, ...] | None:
    """A relevant-cycle subset, or None when none exists.

    Takes the first component of the interconnection graph that covers every
    vertex, then drops cycles greedily (highest index first) while the three
    conditions still hold, so the result is inclusion-minimal.
    """
    graph = interconnection_graph(puzzle)
    for comp in graph.components():
        if len(comp) < 2 or not _covers(puzzle, comp):
            continue
        chosen = set(comp)
        for i in sorted(comp, reverse=True):
            trial = chosen - {i}
            if is_relevant_set(puzzle, trial, graph):
                chosen = trial
        return tuple(sorted(chosen))
    return None


def detect_family(puzzle: Puzzle) -> PuzzleFamily:
    if len(puzzle.cycles) == 2:
        c1, c2 = puzzle.cycles
        kind = properly_interconnected(c1, c2)
        if kind is not None and _covers(puzzle, (0, 1)):
            fam = FamilyKind.ONE_CONNECTED if kind is Connection.ONE_VERTEX else FamilyKind.TWO_CONNECTED
            return PuzzleFamily(fam, len(c1), len(c2), (0, 1))
    relevant = find_relevant_set(puzzle)
    if relevant is not None:
        return PuzzleFamily(FamilyKind.GENERALIZED, relevant=relevant)
    return PuzzleFamily(FamilyKind.UNRECOGNIZED)


class GroupKind(Enum):
    SYMMETRIC = "Symmetric"
    ALTERNATING = "Alternating"
    SPECIAL_S5 = "SpecialS5"
    OTHER = "Other"


@dataclass(frozen=True)
class GroupClass:
    kind: GroupKind
    n: int
    other_order: int | None = None
    source: str = "theorem"

    @property
    def order(self) -> int:
        if self.kind is GroupKind.SYMMETRIC:
            return math.factorial(self.n)
        if self.kind is GroupKind.ALTERNATING:
            return math.factorial(self.n) // 2 if self.n > 1 else 1
        if self.kind is GroupKind.SPECIAL_S5:
            return 120
        return self.other_order

    def describe(self) -> dict:
        return {
            "group": self.kind.value,
            "order": self.order,
            "components": math.factorial(self.n) // self.order,
            "source": self.source,
        }


def _from_engine(puzzle: Puzzle) -> GroupClass:
    size = groups.puzzle_group(puzzle).order()
    full = math.factorial(puzzle.n)
    if size == full:
        return GroupClass(GroupKind.SYMMETRIC, puzzle.n, source="engine")
    if puzzle.n > 1 and size * 2 == full:
        return GroupClass(GroupKind.ALTERNATING, puzzle.n, source="engine")
    return GroupClass(GroupKind.OTHER, puzzle.n, size, source="engine")


def classify(puzzle: Puzzle, family: PuzzleFamily | None = None) -> GroupClass:
    family = family or detect_family(puzzle)
    n = puzzle.n
    all_odd = all(len(c) % 2 == 1 for c in puzzle.cycles)
    if family.kind in (FamilyKind.ONE_CONNECTED, FamilyKind.TWO_CONNECTED):
        if family.kind is FamilyKind.TWO_CONNECTED and (family.a, family.b) == (4, 4):
            return GroupClass(GroupKind.SPECIAL_S5, n)
        return GroupClass(GroupKind.ALTERNATING if all_odd else GroupKind.SYMMETRIC, n)
    if family.kind is FamilyKind.GENERALIZED and n > 6:
        # parity is decided by every cycle, relevant or not
        return GroupClass(GroupKind.ALTERNATING if all_odd else GroupKind.SYMMETRIC, n)
    return _from_engine(puzzle)


# Images of the transpositions (1 i) under the outer automorphism of S6.
PSI_TRANSPOSITIONS: dict[int, tuple[tuple[int, int], ...]] = {
    2: ((1, 5), (2, 3), (4, 6)),
    3: ((1, 4), (2, 6), (3, 5)),
    4: ((1, 3), (2, 4), (5, 6)),
    5: ((1, 2), (3, 6), (4, 5)),
    6: ((1, 6), (2, 5), (3, 4)),
}


@lru_cache(maxsize=None)
def _psi_generators() -> dict[int, Perm]:
    return {i: from_cycles(6, cyc) for i, cyc in PSI_TRANSPOSITIONS.items()}


def _star_factors(p: Perm) -> list[int]:
    """Write ``p`` as a product of transpositions ``(1 i)``; returns the ``i``s left to right."""
    out: list[int] = []
    for cyc in cycle_decomposition(p):
        # (c1 c2 ... ck) = (c1 ck) ... (c1 c3)(c1 c2) under right-to-left composition
        for k in range(len(cyc) - 1, 0, -1):
            i, j = cyc[0], cyc[k]
            if i == 1:
                out.append(j)
            else:
                out.extend((i, j, i))  # (i j) = (1 i)(1 j)(1 i)
    return out


def psi_image(p: Perm) -> Perm:
    if p.n != 6:
        raise ValueError("the outer automorphism is defined on degree 6 only")
    gens = _psi_generators()
    result = Perm.identity(6)
    for i in _star_factors(p):
        result = compose(result, gens[i])
    return result


def special44_member(p: Perm) -> bool:
    """Membership in the group of the 2-connected (4,4)-puzzle (1 2 3 4), (3 4 5 6)."""
    return psi_image(p)(4) == 4
