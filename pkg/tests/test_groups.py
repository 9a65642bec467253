import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycleshift import groups
from cycleshift.perm import Perm, from_cycles
from cycleshift.puzzle import Puzzle

from conftest import closure, sample_perms


SMALL = [
    Puzzle(5, [(1, 2, 3), (3, 4, 5)]),
    Puzzle(6, [(1, 2, 3, 4), (3, 4, 5, 6)]),
    Puzzle(5, [(1, 2, 3, 4), (3, 4, 5)]),
    Puzzle(6, [(1, 2), (3, 4), (5, 6)]),
    Puzzle(6, [(1, 2, 3), (4, 5, 6), (1, 4)]),
    Puzzle(6, [(1, 2, 3, 4, 5, 6), (1, 4)]),
    Puzzle(7, [(1, 2, 3, 4, 5, 6, 7), (1, 2, 4)]),
]


@pytest.mark.parametrize("puzzle", SMALL, ids=lambda p: str(p.cycles))
def test_order_and_membership_match_closure(puzzle):
    gens = [from_cycles(puzzle.n, [c]) for c in puzzle.cycles]
    elements = closure(gens, puzzle.n)
    data = groups.puzzle_group(puzzle)
    assert data.order() == len(elements)
    assert groups.component_count(puzzle) == math.factorial(puzzle.n) // len(elements)
    for p in sample_perms(puzzle.n, 300, seed=puzzle.n):
        assert data.contains(p) == (p.image in elements)


def test_turnstile_order():
    p = Puzzle(10, [(1, 2, 3, 4, 5, 6), (5, 6, 7, 8, 9, 10)])
    assert groups.puzzle_group(p).order() == math.factorial(10)


def test_trivial_group():
    data = groups.build([Perm.identity(4)])
    assert data.order() == 1
    assert data.contains(Perm.identity(4))
    assert not data.contains(from_cycles(4, [(1, 2)]))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 8), st.data())
def test_generators_are_members(n, data):
    k = data.draw(st.integers(1, 3))
    gens = [Perm(data.draw(st.permutations(list(range(1, n + 1))))) for _ in range(k)]
    sgs = groups.build(gens)
    for g in gens:
        assert sgs.contains(g)
    assert math.factorial(n) % sgs.order() == 0
