"""Breadth-first search over token placements.

States are colored placements (tuples of colors), so instances with few
colors search the quotient space directly.  Neighbors are all
(cycle, direction) moves; a move that leaves the placement unchanged is
skipped.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Sequence

from .puzzle import Placement, Puzzle, ShiftMove, check_placement, compatible

__all__ = [
    "DEFAULT_DEPTH_CAP",
    "DEFAULT_STATE_CAP",
    "Infinite",
    "CapExceeded",
    "IncompatiblePlacements",
    "SearchResult",
    "bfs_distance",
    "component_size",
    "decide_budget",
]

DEFAULT_DEPTH_CAP = 64
DEFAULT_STATE_CAP = 50_000_000


class _InfiniteType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinite"

    def __reduce__(self):
        return (_InfiniteType, ())


Infinite = _InfiniteType()


class CapExceeded(RuntimeError):
    def __init__(self, message: str, explored: int):
        super().__init__(message)
        self.explored = explored


class IncompatiblePlacements(ValueError):
    pass


@dataclass
class SearchResult:
    distance: int | _InfiniteType
    witness: tuple[ShiftMove, ...] | None
    explored: int

    @property
    def reachable(self) -> bool:
        return self.distance is not Infinite


def _prepare(puzzle: Puzzle, f0, ft) -> tuple[Placement, Placement]:
    try:
        f0 = check_placement(f0, puzzle.n)
        ft = check_placement(ft, puzzle.n)
    except ValueError as exc:
        raise IncompatiblePlacements(str(exc)) from None
    if not compatible(f0, ft):
        raise IncompatiblePlacements("placements use different color multisets")
    return f0, ft


def _steps(puzzle: Puzzle):
    getters = puzzle._getters
    out = []
    for move in puzzle.moves():
        # a 2-cycle has one distinct shift
        if not move.forward and len(puzzle.cycles[move.cycle]) == 2:
            continue
        out.append((move, getters[move]))
    return out


def _trace_back(parent: dict, state) -> list[ShiftMove]:
    path = []
    while True:
        prev, move = parent[state]
        if prev is None:
            break
        path.append(move)
        state = prev
    path.reverse()
    return path


def bfs_distance(
    puzzle: Puzzle,
    f0: Sequence[int],
    ft: Sequence[int],
    depth_cap: int | None = DEFAULT_DEPTH_CAP,
    state_cap: int | None = DEFAULT_STATE_CAP,
    bidirectional: bool | None = None,
    lower_bound: Callable[[Placement], int] | None = None,
) -> SearchResult:
    """Exact distance from ``f0`` to ``ft``.

    Raises CapExceeded when a cap stops the search before the answer is known;
    returns distance ``Infinite`` when the component of ``f0`` is exhausted.
    ``lower_bound`` is an optional admissible estimate of the remaining
    distance; it only prunes states that cannot reach ``ft`` within the depth
    cap, so distances stay exact.
    """
    f0, ft = _prepare(puzzle, f0, ft)
    if f0 == ft:
        return SearchResult(0, (), 1)
    if bidirectional is None:
        bidirectional = lower_bound is None
    if bidirectional:
        return _bidirectional(puzzle, f0, ft, depth_cap, state_cap)
    return _forward(puzzle, f0, ft, depth_cap, state_cap, lower_bound)


def _forward(puzzle, f0, ft, depth_cap, state_cap, lower_bound) -> SearchResult:
    steps = _steps(puzzle)
    parent = {f0: (None, None)}
    frontier = [f0]
    depth = 0
    truncated = False
    while frontier:
        if depth_cap is not None and depth >= depth_cap:
            raise CapExceeded(f"depth cap {depth_cap} reached", len(parent))
        nxt = []
        for f in frontier:
            for move, get in steps:
                g = get(f)
                if g in parent:
                    continue
                if lower_bound is not None and depth_cap is not None and depth + 1 + lower_bound(g) > depth_cap:
                    truncated = True
                    continue
                parent[g] = (f, move)
                if g == ft:
                    path = _trace_back(parent, g)
                    return SearchResult(len(path), tuple(path), len(parent))
                nxt.append(g)
            if state_cap is not None and len(parent) > state_cap:
                raise CapExceeded(f"state cap {state_cap} exceeded", len(parent))
        frontier = nxt
        depth += 1
    if truncated:
        raise CapExceeded(f"no path within depth cap {depth_cap}", len(parent))
    return SearchResult(Infinite, None, len(parent))


def _bidirectional(puzzle, f0, ft, depth_cap, state_cap) -> SearchResult:
    steps = _steps(puzzle)
    getters = puzzle._getters
    back_steps = [(m, getters[m.inverse()]) for m, _ in steps]
    # state -> (previous state, move, depth); backward entries record the move leading toward ft
    seen = [{f0: (None, None, 0)}, {ft: (None, None, 0)}]
    frontiers = [[f0], [ft]]
    depths = [0, 0]

    def chain(table, state):
        out = []
        while table[state][0] is not None:
            prev, move, _ = table[state]
            out.append(move)
            state = prev
        return out

    while frontiers[0] and frontiers[1]:
        explored = len(seen[0]) + len(seen[1])
        if depth_cap is not None and depths[0] + depths[1] >= depth_cap:
            raise CapExceeded(f"depth cap {depth_cap} reached", explored)
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        table, other = seen[side], seen[1 - side]
        moves = steps if side == 0 else back_steps
        depth = depths[side] + 1
        nxt = []
        best = None
        for f in frontiers[side]:
            for move, get in moves:
                g = get(f)
                if g in table:
                    continue
                table[g] = (f, move, depth)
                nxt.append(g)
                if g in other:
                    total = depth + other[g][2]
                    if best is None or total < best[0]:
                        best = (total, g)
            if state_cap is not None and len(seen[0]) + len(seen[1]) > state_cap:
                raise CapExceeded(f"state cap {state_cap} exceeded", len(seen[0]) + len(seen[1]))
        if best is not None:
            g = best[1]
            path = chain(seen[0], g)[::-1] + chain(seen[1], g)
            return SearchResult(len(path), tuple(path), len(seen[0]) + len(seen[1]))
        frontiers[side] = nxt
        depths[side] = depth
    return SearchResult(Infinite, None, len(seen[0]) + len(seen[1]))


def component_size(puzzle: Puzzle, f0: Sequence[int], state_cap: int | None = DEFAULT_STATE_CAP) -> int:
    f0 = check_placement(f0, puzzle.n)
    steps = _steps(puzzle)
    seen = {f0}
    queue = deque([f0])
    while queue:
        f = queue.popleft()
        for _, get in steps:
            g = get(f)
            if g not in seen:
                seen.add(g)
                if state_cap is not None and len(seen) > state_cap:
                    raise CapExceeded(f"state cap {state_cap} exceeded", len(seen))
                queue.append(g)
    return len(seen)


def decide_budget(
    puzzle: Puzzle,
    f0: Sequence[int],
    ft: Sequence[int],
    budget: int,
    state_cap: int | None = DEFAULT_STATE_CAP,
    lower_bound: Callable[[Placement], int] | None = None,
) -> tuple[bool, SearchResult | None]:
    """Whether ``dist(f0, ft) <= budget``; returns the answer and the witness search."""
    if budget < 0:
        raise ValueError("budget must be non-negative")
    try:
        res = bfs_distance(puzzle, f0, ft, depth_cap=budget, state_cap=state_cap, lower_bound=lower_bound)
    except CapExceeded as exc:
        if str(exc).startswith("state cap"):
            raise
        return False, None
    if res.distance is Infinite:
        return False, res
    return res.distance <= budget, res
