import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycleshift import groups
from cycleshift.gen import SplitMix64
from cycleshift.puzzle import Puzzle, apply_sequence, identity_placement
from cycleshift.search import (
    CapExceeded,
    IncompatiblePlacements,
    Infinite,
    bfs_distance,
    component_size,
    decide_budget,
)

from conftest import naive_distances

PUZZLES = [
    Puzzle(5, [(1, 2, 3), (3, 4, 5)]),
    Puzzle(6, [(1, 2, 3, 4), (3, 4, 5, 6)]),
    Puzzle(6, [(1, 2), (2, 3, 4), (4, 5, 6)]),
    Puzzle(6, [(1, 2, 3), (4, 5, 6)]),
]


@pytest.mark.parametrize("puzzle", PUZZLES, ids=lambda p: str(p.cycles))
@pytest.mark.parametrize("start", ["full", "colored"])
def test_distances_match_naive_bfs(puzzle, start):
    n = puzzle.n
    f0 = identity_placement(n) if start == "full" else tuple(1 + (v % 3) for v in range(n))
    f0 = tuple(sorted(set(f0)).index(c) + 1 for c in f0)
    dist = naive_distances(puzzle, f0)
    targets = list(dist.items())[:: max(1, len(dist) // 60)]
    for ft, d in targets:
        for bidirectional in (True, False):
            res = bfs_distance(puzzle, f0, ft, bidirectional=bidirectional)
            assert res.distance == d
            assert len(res.witness) == d
            assert apply_sequence(f0, puzzle, res.witness) == ft


def test_unreachable_is_infinite():
    p = Puzzle(6, [(1, 2, 3), (4, 5, 6)])
    for bidirectional in (True, False):
        res = bfs_distance(p, identity_placement(6), (4, 2, 3, 1, 5, 6), bidirectional=bidirectional)
        assert res.distance is Infinite and not res.reachable and res.witness is None


def test_zero_distance():
    p = PUZZLES[0]
    res = bfs_distance(p, (1, 1, 2, 2, 1), (1, 1, 2, 2, 1))
    assert res.distance == 0 and res.witness == ()


def test_caps():
    p = Puzzle(8, [(1, 2, 3, 4, 5), (5, 6, 7, 8)])
    far = (8, 7, 6, 5, 4, 3, 2, 1)
    with pytest.raises(CapExceeded, match="state cap"):
        bfs_distance(p, identity_placement(8), far, state_cap=50)
    with pytest.raises(CapExceeded, match="depth cap"):
        bfs_distance(p, identity_placement(8), far, depth_cap=2)
    with pytest.raises(CapExceeded, match="depth cap"):
        bfs_distance(p, identity_placement(8), far, depth_cap=2, bidirectional=False)


def test_incompatible():
    with pytest.raises(IncompatiblePlacements):
        bfs_distance(PUZZLES[0], (1, 2, 2, 1, 1), (1, 2, 2, 2, 1))
    with pytest.raises(IncompatiblePlacements):
        bfs_distance(PUZZLES[0], (1, 2, 3), (1, 2, 3))


@pytest.mark.parametrize("puzzle", PUZZLES, ids=lambda p: str(p.cycles))
def test_component_size_is_group_order(puzzle):
    assert component_size(puzzle, identity_placement(puzzle.n)) == groups.puzzle_group(puzzle).order()


def test_decide_budget():
    p = PUZZLES[1]
    f0 = identity_placement(6)
    dist = naive_distances(p, f0)
    ft, d = max(dist.items(), key=lambda kv: kv[1])
    assert decide_budget(p, f0, ft, d)[0]
    assert not decide_budget(p, f0, ft, d - 1)[0]
    with pytest.raises(ValueError):
        decide_budget(p, f0, ft, -1)


def test_lower_bound_prunes_but_keeps_distance():
    p = PUZZLES[2]
    f0 = identity_placement(6)
    dist = naive_distances(p, f0)

    def misplaced(f):
        # each shift moves at most 3 tokens on these cycles
        return math.ceil(sum(1 for v, c in enumerate(f, 1) if c != v) / 3)

    for ft, d in list(dist.items())[::7]:
        res = bfs_distance(p, ft, f0, depth_cap=d, lower_bound=misplaced)
        assert res.distance == dist[ft]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_random_colored_pairs(seed):
    rng = SplitMix64(seed)
    p = PUZZLES[rng.below(len(PUZZLES))]
    f0 = tuple(1 + rng.below(2) for _ in range(p.n))
    if len(set(f0)) == 1:
        f0 = (2,) + f0[1:] if f0[0] == 1 else (1,) + f0[1:]
    dist = naive_distances(p, f0)
    ft = list(dist)[rng.below(len(dist))]
    assert bfs_distance(p, f0, ft).distance == dist[ft]
