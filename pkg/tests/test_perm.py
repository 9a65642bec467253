import pytest
from hypothesis import given
from hypothesis import strategies as st

from cycleshift.perm import (
    Parity,
    Perm,
    compose,
    conjugate,
    cycle_decomposition,
    format_cycles,
    format_one_line,
    from_cycles,
    inverse,
    parity,
    parse_perm,
)

from conftest import naive_compose, perm_pairs, perms


def test_composition_is_right_to_left():
    p = parse_perm("(1 2 3)", 5)
    q = parse_perm("(3 4 5)", 5)
    assert compose(p, q).image == (2, 3, 4, 5, 1)
    assert compose(p, q).image != (2, 4, 1, 5, 3)
    assert compose(p, q) == parse_perm("(1 2 3 4 5)")


def test_one_line_and_cycle_forms_agree():
    p = parse_perm("[2 3 1 4 5]")
    assert p == parse_perm("(1 2 3)", 5)
    assert format_one_line(p) == "[2 3 1 4 5]"
    assert format_cycles(p) == "(1 2 3)"
    assert format_cycles(Perm.identity(4)) == "()"


@given(perm_pairs())
def test_compose_matches_longhand(pq):
    p, q = pq
    assert compose(p, q).image == naive_compose(p.image, q.image)


@given(perm_pairs(), st.data())
def test_associative(pq, data):
    p, q = pq
    r = data.draw(perms(p.n))
    assert compose(compose(p, q), r) == compose(p, compose(q, r))


@given(st.integers(1, 9).flatmap(perms))
def test_inverse(p):
    e = Perm.identity(p.n)
    assert compose(p, inverse(p)) == e
    assert compose(inverse(p), p) == e
    assert p ** -1 == ~p == inverse(p)


@given(st.integers(1, 9).flatmap(perms))
def test_cycles_round_trip(p):
    cycles = cycle_decomposition(p)
    assert from_cycles(p.n, cycles) == p
    assert all(len(c) >= 2 for c in cycles)
    assert sum(len(c) for c in cycles) == len(p.support())


@given(st.integers(1, 9).flatmap(perms))
def test_parse_format_round_trip(p):
    assert parse_perm(format_cycles(p), p.n) == p
    assert parse_perm(format_one_line(p)) == p


@given(perm_pairs())
def test_parity_is_a_homomorphism(pq):
    p, q = pq
    both = parity(p) is parity(q)
    assert (parity(compose(p, q)) is Parity.EVEN) == both


def test_parity_by_inversion_count():
    # independent count of inversions
    for image in [(2, 1, 3), (2, 3, 1), (3, 2, 1), (1, 2, 3, 4), (4, 3, 2, 1)]:
        inv = sum(1 for i in range(len(image)) for j in range(i + 1, len(image)) if image[i] > image[j])
        assert Perm(image).is_even() == (inv % 2 == 0)


@given(perm_pairs())
def test_conjugate_preserves_cycle_type(pq):
    g, h = pq
    assert conjugate(g, h).cycle_type() == g.cycle_type()
    assert conjugate(g, h) == compose(compose(inverse(h), g), h)


def test_single_cycles_and_powers():
    c = Perm.cycle(6, 1, 2, 3, 4)
    assert c(1) == 2 and c(4) == 1 and c(5) == 5
    assert c ** 4 == Perm.identity(6)
    assert c ** 2 == from_cycles(6, [(1, 3), (2, 4)])


@pytest.mark.parametrize(
    "text, n",
    [("(1 2 2)", 3), ("(1 5)", 4), ("[1 1 2]", None), ("(1 2", 3), ("[]", None)],
)
def test_parse_rejects(text, n):
    with pytest.raises(ValueError):
        parse_perm(text, n)


def test_degree_mismatch():
    with pytest.raises(ValueError):
        compose(Perm.identity(3), Perm.identity(4))
