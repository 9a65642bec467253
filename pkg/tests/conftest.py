import itertools
import random

import pytest
from hypothesis import strategies as st

from cycleshift.perm import Perm
from cycleshift.puzzle import Puzzle

# generalized puzzle with three kinds of extra cycles hanging off four relevant ones
FIG4_CYCLES = [
    (1, 2, 3, 4, 5),
    (5, 6, 7),
    (7, 8, 9, 10, 11),
    (10, 12, 11),
    (1, 3, 10, 2, 8, 12),
    (2, 6, 9),
    (6, 4, 9, 11, 2),
    (1, 5, 8),
    (1, 8, 12, 5, 11),
]


@pytest.fixture
def fig4():
    return Puzzle(12, FIG4_CYCLES)


def perms(n: int):
    return st.permutations(list(range(1, n + 1))).map(Perm)


@st.composite
def perm_pairs(draw, lo=1, hi=9):
    n = draw(st.integers(lo, hi))
    return draw(perms(n)), draw(perms(n))


def naive_compose(p, q):
    """Right-to-left composition on plain tuples, written out longhand."""
    out = []
    for v in range(1, len(q) + 1):
        out.append(p[q[v - 1] - 1])
    return tuple(out)


def closure(gens, n):
    """Every product of the generators, by breadth-first closure on tuples."""
    start = tuple(range(1, n + 1))
    seen = {start}
    frontier = [start]
    gens = [tuple(g.image) for g in gens]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = naive_compose(f, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def naive_distances(puzzle, f0):
    """Distance map from ``f0`` over colored placements, using explicit cycle rotation."""

    def shifts(f):
        for cyc in puzzle.cycles:
            for step in (1, -1):
                g = list(f)
                for k, v in enumerate(cyc):
                    # forward: the token at the next listed vertex moves onto v
                    src = cyc[(k + step) % len(cyc)]
                    g[v - 1] = f[src - 1]
                yield tuple(g)

    f0 = tuple(f0)
    dist = {f0: 0}
    frontier = [f0]
    while frontier:
        nxt = []
        for f in frontier:
            for g in shifts(f):
                if g not in dist:
                    dist[g] = dist[f] + 1
                    nxt.append(g)
        frontier = nxt
    return dist


def sample_perms(n, k, seed, even=None):
    rng = random.Random(seed)
    if k >= 2 * 3 * 4 * 5 * 6 * 7 and n <= 7:
        pool = [Perm(p) for p in itertools.permutations(range(1, n + 1))]
    else:
        pool = None
    out = []
    while len(out) < k:
        p = rng.choice(pool) if pool else Perm(rng.sample(range(1, n + 1), n))
        if even is None or p.is_even() == even:
            out.append(p)
    return out
