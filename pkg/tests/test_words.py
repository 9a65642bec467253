import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycleshift.perm import Perm, compose, from_cycles, inverse
from cycleshift.puzzle import Puzzle, apply_sequence, identity_placement
from cycleshift.words import (
    K_ADJ,
    K_BUBBLE,
    K_NCYCLE,
    Letter,
    OddTarget,
    evaluate,
    evaluate_symbolic,
    expand,
    relabel,
    word_an_adjacent_3cycles,
    word_an_ncycle_3cycle,
    word_sn_bubble,
)

from conftest import naive_compose, perms


def longhand(word, alphabet, n):
    f = tuple(range(1, n + 1))
    for key, e in word:
        g = alphabet[key] if e == 1 else inverse(alphabet[key])
        f = naive_compose(f, g.image)
    return f


def bubble_alphabet(n):
    return {"rho": from_cycles(n, [range(1, n + 1)]), "t": from_cycles(n, [(1, 2)])}


def ncycle_alphabet(n):
    return {"rho": from_cycles(n, [range(1, n + 1)]), "s": from_cycles(n, [(1, 2, 3)])}


def window_alphabet(n):
    return {j: from_cycles(n, [(j, j + 1, j + 2)]) for j in range(1, n - 1)}


@settings(max_examples=200)
@given(st.integers(2, 10).flatmap(perms))
def test_bubble(target):
    n = target.n
    word = word_sn_bubble(target)
    assert longhand(word, bubble_alphabet(n), n) == target.image
    assert len(word) <= K_BUBBLE * n * n


@settings(max_examples=200)
@given(st.integers(3, 10).flatmap(perms))
def test_ncycle_and_3cycle(target):
    n = target.n
    if not target.is_even():
        with pytest.raises(OddTarget):
            word_an_ncycle_3cycle(target)
        return
    word = word_an_ncycle_3cycle(target)
    assert longhand(word, ncycle_alphabet(n), n) == target.image
    assert len(word) <= K_NCYCLE * n * n


@settings(max_examples=200)
@given(st.integers(3, 10).flatmap(perms))
def test_adjacent_3cycles(target):
    n = target.n
    if not target.is_even():
        with pytest.raises(OddTarget):
            word_an_adjacent_3cycles(target)
        return
    word = word_an_adjacent_3cycles(target)
    assert longhand(word, window_alphabet(n), n) == target.image
    assert len(word) <= K_ADJ * n * n


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_exhaustive_small_degrees(n):
    for image in itertools.permutations(range(1, n + 1)):
        p = Perm(image)
        assert evaluate_symbolic(word_sn_bubble(p), bubble_alphabet(n), n) == p
        if p.is_even():
            assert evaluate_symbolic(word_an_ncycle_3cycle(p), ncycle_alphabet(n), n) == p
            assert evaluate_symbolic(word_an_adjacent_3cycles(p), window_alphabet(n), n) == p


def test_identity_words_are_empty():
    assert word_an_adjacent_3cycles(Perm.identity(5)) == []
    assert word_an_ncycle_3cycle(Perm.identity(5)) == []
    assert word_sn_bubble(Perm.identity(5)) == []


def test_derived_letters_expand_to_moves():
    puzzle = Puzzle(5, [(1, 2, 3), (3, 4, 5)])
    a, b = Letter.shift(puzzle, 0), Letter.shift(puzzle, 1)
    comm = Letter.derived("comm", [(b, 1), (a, -1), (b, -1), (a, 1)])
    assert comm.perm == compose(compose(compose(b.perm, inverse(a.perm)), inverse(b.perm)), a.perm)
    assert comm.perm.cycle_type() == (3,)
    word = [(comm, 1), (a, 1), (comm, -1)]
    moves = expand(word)
    assert len(moves) == 9
    assert apply_sequence(identity_placement(5), puzzle, moves) == evaluate(word, 5).image
    assert comm.power(-1).perm == inverse(comm.perm)


def test_relabel():
    t = from_cycles(7, [(2, 5, 7)])
    assert relabel(t, [2, 5, 7]) == from_cycles(3, [(1, 2, 3)])
    assert relabel(t, [7, 2, 5, 1]) == from_cycles(4, [(1, 2, 3)])
    with pytest.raises(ValueError):
        relabel(t, [2, 5])
