"""Constructive solvers emitting explicit shift sequences.

Every procedure builds a word over *letters* (puzzle shifts or derived
permutations such as commutators and conjugates) and expands it into puzzle
moves at the end.  Derived letters are built once per solver and cache their
expansions, so the cost of a letter is paid in moves but computed only once.

Length constants, in puzzle shifts (checked by the test suite and reported by
``scripts/bench_lengths.py``):

* two-cycle families:   ``len <= K_PAIR * n**2``
* generalized puzzles:  ``len <= K_GENERAL * n**5``
* walk construction:    ``len(W) <= K_WALK * sum(relevant lengths) * len(relevant)``
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from .classify import (
    Connection,
    FamilyKind,
    GroupClass,
    GroupKind,
    PuzzleFamily,
    classify,
    detect_family,
    interconnection_graph,
    properly_interconnected,
    special44_member,
)
from . import groups
from .perm import Perm, compose, from_cycles, inverse
from .puzzle import (
    Placement,
    Puzzle,
    ShiftMove,
    apply_sequence,
    check_placement,
    compatible,
    peephole as peephole_pass,
)
from .search import IncompatiblePlacements
from .walk import MalformedWalk, WalkLemma, build_walk
from .words import (
    Letter,
    OddTarget,
    Word,
    bind,
    evaluate,
    expand,
    relabel,
    word_an_ncycle_3cycle,
    word_sn_bubble,
)

__all__ = [
    "K_PAIR",
    "K_GENERAL",
    "K_WALK",
    "SolverError",
    "NotInGroup",
    "FamilyMismatch",
    "ConfigurationNotMatched",
    "MalformedWalk",
    "OddTarget",
    "Unreachable",
    "IncompatiblePlacements",
    "Solution",
    "PairFrame",
    "pair_frame",
    "PairSolver",
    "GeneralizedSolver",
    "THIRD_CYCLE_CASES",
    "case_word",
    "solve_1connected",
    "solve_2connected",
    "solve_generalized",
    "solve_permutation",
    "solve",
    "lift",
]

K_PAIR = 40
K_GENERAL = 10
K_WALK = 3


class SolverError(Exception):
    pass


class NotInGroup(SolverError):
    pass


class FamilyMismatch(SolverError):
    pass


class ConfigurationNotMatched(SolverError):
    pass


class Unreachable(SolverError):
    pass


def single_cycle(p: Perm) -> tuple[int, ...]:
    cycles = p.cycles()
    if len(cycles) != 1:
        raise ValueError(f"{p} is not a single cycle")
    return tuple(cycles[0])


def _rot(cyc: Sequence[int], start: int) -> list[int]:
    k = list(cyc).index(start)
    return list(cyc[k:]) + list(cyc[:k])


def _word_table(gens: tuple[tuple[Hashable, Perm], ...]) -> dict[Perm, tuple]:
    """Shortest words (over gens and inverses) for every element of the group."""
    n = gens[0][1].n
    steps = []
    for key, g in gens:
        steps.append((key, 1, g))
        steps.append((key, -1, inverse(g)))
    ident = Perm.identity(n)
    table = {ident: ()}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for key, e, g in steps:
            q = compose(p, g)
            if q not in table:
                table[q] = table[p] + ((key, e),)
                queue.append(q)
    return table


ALPHA44 = from_cycles(6, [(1, 2, 3, 4)])
BETA44 = from_cycles(6, [(3, 4, 5, 6)])


@lru_cache(maxsize=None)
def _table_44() -> dict[Perm, tuple]:
    return _word_table((("alpha", ALPHA44), ("beta", BETA44)))


@lru_cache(maxsize=None)
def _table_swap(x: int) -> dict[Perm, tuple]:
    gamma1 = compose(inverse(ALPHA44), BETA44)
    return _word_table((("t", from_cycles(6, [(3, x)])), ("g", gamma1)))


# ---------------------------------------------------------------------------
# two-cycle puzzles


@dataclass
class PairFrame:
    """Canonical relabelling of two properly interconnected cycles.

    ``labels[i]`` is the vertex playing canonical label ``i + 1``; ``alpha`` and
    ``beta`` act as ``(1 2 ... a)`` and ``(a ... n)`` (1-connected) or
    ``(1 2 ... a)`` and ``(a-1 a ... n)`` (2-connected) on those labels.
    """

    kind: FamilyKind
    alpha: Letter
    beta: Letter
    labels: list[int]

    @property
    def a(self) -> int:
        return len(single_cycle(self.alpha.perm))

    @property
    def b(self) -> int:
        return len(single_cycle(self.beta.perm))


def pair_frame(A: Letter, B: Letter) -> PairFrame:
    ca, cb = single_cycle(A.perm), single_cycle(B.perm)
    kind = properly_interconnected(ca, cb)
    if kind is Connection.ONE_VERTEX:
        (x,) = set(ca) & set(cb)
        la = _rot(ca, x)
        la = la[1:] + la[:1]  # ends with x
        lb = _rot(cb, x)
        return PairFrame(FamilyKind.ONE_CONNECTED, A, B, la + lb[1:])
    if kind is Connection.TWO_ADJACENT:
        if len(ca) > len(cb):
            A, B, ca, cb = B, A, cb, ca
        shared = set(ca) & set(cb)
        # rotate alpha so it ends with the shared pair (x, y) in its own order
        for s in ca:
            la = _rot(ca, s)
            if set(la[-2:]) == shared:
                break
        x, y = la[-2], la[-1]
        lb = _rot(cb, x)
        if lb[1] != y:
            B = B.power(-1)
            cb = single_cycle(B.perm)
            lb = _rot(cb, x)
        return PairFrame(FamilyKind.TWO_CONNECTED, A, B, la + lb[2:])
    raise FamilyMismatch("the two cycles are not properly interconnected")


class PairSolver:
    """Words for the configuration group of two properly interconnected cycles.

    Targets must fix every vertex outside the union of the two cycles.
    """

    def __init__(self, A: Letter, B: Letter):
        self.frame = pair_frame(A, B)
        self.n = A.perm.n
        self._derived: dict[str, Letter] = {}
        self._inner: PairSolver | None = None

    @property
    def support(self) -> list[int]:
        return self.frame.labels

    def _letter(self, name: str, body) -> Letter:
        if name not in self._derived:
            self._derived[name] = Letter.derived(name, body)
        return self._derived[name]

    def _tag(self) -> str:
        f = self.frame
        prefix = "thm-1connected" if f.kind is FamilyKind.ONE_CONNECTED else "thm-2connected"
        return f"{prefix}/a{f.a}b{f.b}"

    def contains(self, target: Perm) -> bool:
        try:
            canon = relabel(target, self.frame.labels)
        except ValueError:
            return False
        f = self.frame
        if f.kind is FamilyKind.TWO_CONNECTED and (f.a, f.b) == (4, 4):
            return special44_member(canon)
        return canon.is_even() or f.a % 2 == 0 or f.b % 2 == 0

    def word(self, target: Perm, trace: list[str] | None = None) -> Word:
        trace = trace if trace is not None else []
        f = self.frame
        try:
            canon = relabel(target, f.labels)
        except ValueError as exc:
            raise NotInGroup(str(exc)) from None
        if canon.is_identity():
            return []
        for letter in (f.alpha, f.beta):
            for e in (1, -1):
                if target == letter.perm_power(e):
                    return [(letter, e)]
        tag = self._tag()
        if f.kind is FamilyKind.TWO_CONNECTED and (f.a, f.b) == (4, 4):
            if not special44_member(canon):
                raise NotInGroup("not in the configuration group of the (4,4) puzzle")
            trace.append(f"{tag}/table")
            return bind(_table_44()[canon], {"alpha": f.alpha, "beta": f.beta})
        if f.kind is FamilyKind.TWO_CONNECTED and f.a == 2:
            trace.append(f"{tag}/bubble")
            return bind(word_sn_bubble(canon), {"rho": f.beta, "t": f.alpha})
        if canon.is_even():
            return self._even(target, trace)
        fix = f.alpha if f.a % 2 == 0 else f.beta if f.b % 2 == 0 else None
        if fix is None:
            raise NotInGroup("odd target but both cycles have odd length")
        trace.append(f"{tag}/parity-fixup")
        # generate target * fix (even), then one more shift along fix^-1
        return self._even(compose(target, fix.perm), trace) + [(fix, -1)]

    def _even(self, target: Perm, trace: list[str]) -> Word:
        f = self.frame
        tag = self._tag()
        alpha, beta, labels = f.alpha, f.beta, f.labels
        if f.kind is FamilyKind.ONE_CONNECTED:
            trace.append(f"{tag}/commutator")
            rho = self._letter("rho", [(alpha, 1), (beta, 1)])
            s = self._letter("comm", [(beta, 1), (alpha, -1), (beta, -1), (alpha, 1)])
            a = f.a
            frame = labels[a - 2 :] + labels[: a - 2]
            return bind(word_an_ncycle_3cycle(relabel(target, frame)), {"rho": rho, "s": s})
        if f.a == 3:
            trace.append(f"{tag}/place-token-1")
            return self._three_cycle_pair(target)
        trace.append(f"{tag}/tau-route")
        if self._inner is None:
            g1 = self._letter("gamma1", [(alpha, -1), (beta, 1)])
            g2 = self._letter("gamma2", [(alpha, 1), (beta, -1)])
            d1 = self._letter("delta1", [(g1, -1), (beta, 1), (g1, 1)])
            d2 = self._letter("delta2", [(g2, -1), (beta, -1), (g2, 1)])
            tau = self._letter("tau", [(alpha, 1), (d1, 1), (d2, 1), (d1, 1), (d2, 1), (alpha, -1)])
            self._inner = PairSolver(tau, g1)
        return self._inner.word(target, trace)

    def _three_cycle_pair(self, target: Perm) -> Word:
        alpha, beta, l = self.frame.alpha, self.frame.beta, self.frame.labels
        N = len(l)
        g1 = self._letter("gamma1", [(alpha, -1), (beta, 1)])
        c = self._letter("c234", [(g1, 1), (alpha, -1), (g1, -1)])
        x = target(l[0])
        word: Word = []
        if x == l[2]:
            word = [(alpha, -1)]
        elif x != l[0]:
            j = (l.index(x) + 1 - 2) % (N - 1)
            if j > (N - 1) // 2:
                j -= N - 1
            word = [(beta, 1 if j > 0 else -1)] * abs(j) + [(alpha, 1)]
        sigma = evaluate(word, self.n) if word else Perm.identity(self.n)
        if not sigma.is_even():
            word.append((beta, 1))
            sigma = compose(sigma, beta.perm)
        rest = compose(inverse(sigma), target)
        sym = word_an_ncycle_3cycle(relabel(rest, l[1:]))
        return word + bind(sym, {"rho": beta, "s": c})


# ---------------------------------------------------------------------------
# (4,4) pair plus a third relevant cycle

# canonical labels: alpha = (1 2 3 4), beta = (3 4 5 6), outside vertices 7, 8.
# Each entry: third cycle, fixed word (None: delegate to a pair solver), x of (3 x).
THIRD_CYCLE_CASES: dict[int, tuple[tuple[int, ...], tuple | str, int]] = {
    1: ((3, 4, 7, 8), "gamma1", 4),
    2: ((5, 6, 7, 8), "gamma2", 5),
    3: ((1, 7, 3, 4), (("tau", -1), ("tau", -1), ("alpha", 1), ("tau", 1), ("alpha", 1)), 2),
    4: ((1, 3, 4, 7), (("alpha", 1), ("beta", -1), ("alpha", -1), ("tau", 1), ("beta", 1), ("tau", 1), ("tau", 1)), 4),
    5: ((1, 3, 6, 7), (("beta", -1), ("alpha", 1), ("tau", -1), ("alpha", 1), ("beta", 1), ("tau", 1), ("tau", 1)), 5),
    6: ((1, 6, 3, 7), (("alpha", 1), ("beta", 1), ("alpha", -1), ("beta", 1), ("tau", -1), ("beta", 1), ("tau", 1)), 1),
    7: ((2, 6, 3, 7), (("alpha", 1), ("alpha", 1), ("tau", 1), ("tau", 1), ("alpha", 1), ("tau", 1), ("tau", 1)), 4),
    8: ((2, 3, 6, 7), (("tau", -1), ("beta", -1), ("alpha", 1), ("beta", 1), ("alpha", -1), ("tau", 1), ("alpha", 1)), 1),
}


def case_word(case: int) -> tuple[tuple, Perm, Perm]:
    """The fixed word of a case, its evaluation on 8 points, and the expected (3 x)."""
    tau_cycle, word, x = THIRD_CYCLE_CASES[case]
    if isinstance(word, str):
        raise ValueError(f"case {case} has no fixed word")
    alphabet = {
        "alpha": from_cycles(8, [(1, 2, 3, 4)]),
        "beta": from_cycles(8, [(3, 4, 5, 6)]),
        "tau": from_cycles(8, [tau_cycle]),
    }
    value = Perm.identity(8)
    for key, e in word:
        value = compose(value, alphabet[key] if e == 1 else inverse(alphabet[key]))
    return word, value, from_cycles(8, [(3, x)])


def _match_case(P: Letter, Q: Letter, T: Letter):
    """Find a relabelling putting (P, Q, T) in one of the canonical shapes.

    Returns ``(case, labels, alpha, beta, tau)`` with ``labels`` the vertices of
    canonical labels 1..6, or None.
    """
    for case, (tau_shape, _, _) in THIRD_CYCLE_CASES.items():
        for A, B in ((P, Q), (Q, P)):
            for ea, eb, et in itertools.product((1, -1), repeat=3):
                ca = single_cycle(A.perm_power(ea))
                cb = single_cycle(B.perm_power(eb))
                ct = single_cycle(T.perm_power(et))
                for r in range(4):
                    L = _rot(ca, ca[r])
                    if L[2] not in cb:
                        continue
                    lb = _rot(cb, L[2])
                    if lb[1] != L[3]:
                        continue
                    L = L + lb[2:]
                    if len(set(L)) != 6:
                        continue
                    for start in ct:
                        rt = _rot(ct, start)
                        outside: dict[int, int] = {}
                        ok = True
                        for canon, v in zip(tau_shape, rt):
                            if canon <= 6:
                                ok = L[canon - 1] == v
                            else:
                                ok = v not in L and outside.setdefault(canon, v) == v
                                ok = ok and list(outside.values()).count(v) == 1
                            if not ok:
                                break
                        if ok:
                            return case, L, A.power(ea), B.power(eb), T.power(et)
    return None


# ---------------------------------------------------------------------------
# generalized puzzles


class GeneralizedSolver:
    """Even permutations through the window 3-cycles of a covering walk."""

    def __init__(self, puzzle: Puzzle, relevant: Sequence[int] | None = None):
        if relevant is None:
            fam = detect_family(puzzle)
            if fam.kind is not FamilyKind.GENERALIZED:
                raise FamilyMismatch(f"expected a generalized puzzle, got {fam.kind.value}")
            relevant = fam.relevant
        self.puzzle = puzzle
        self.n = puzzle.n
        self.relevant = tuple(sorted(relevant))
        self.letters = [Letter.shift(puzzle, i) for i in range(len(puzzle.cycles))]
        self.graph = interconnection_graph(puzzle)
        self.walk = build_walk(puzzle, self.relevant)
        self.lemma = WalkLemma(self.walk, self.n)
        self._pairs: dict[tuple[int, int], PairSolver] = {}
        self._walk_letters: dict[int, Letter] = {}
        self._swap_routes: dict[tuple[int, int], list] = {}
        rel = set(self.relevant)
        self._edges = [(e.i, e.j) for e in self.graph.edges if e.i in rel and e.j in rel]

    def pair(self, i: int, j: int) -> PairSolver:
        key = (min(i, j), max(i, j))
        if key not in self._pairs:
            self._pairs[key] = PairSolver(self.letters[key[0]], self.letters[key[1]])
        return self._pairs[key]

    def _is44(self, i: int, j: int) -> bool:
        e = self.graph.edge(i, j)
        return (
            e is not None
            and e.kind is Connection.TWO_ADJACENT
            and len(self.puzzle.cycles[i]) == 4
            and len(self.puzzle.cycles[j]) == 4
        )

    def local_pairs(self, vertices: Iterable[int]) -> list[tuple[int, int]]:
        vs = set(vertices)
        out = []
        for i, j in self._edges:
            union = set(self.puzzle.cycles[i]) | set(self.puzzle.cycles[j])
            if vs <= union:
                out.append((self._is44(i, j), len(union), i, j))
        return [(i, j) for _, _, i, j in sorted(out)]

    def local_word(self, target: Perm, trace: list[str]) -> Word:
        """Word for a permutation supported on the union of one relevant pair."""
        support = target.support()
        pairs = self.local_pairs(support)
        if not pairs:
            raise SolverError(f"no relevant pair covers {support}")
        for i, j in pairs:
            ps = self.pair(i, j)
            if not self._is44(i, j) or ps.contains(target):
                return ps.word(target, trace)
            try:
                return self.word_44_plus_third(i, j, target, trace)
            except ConfigurationNotMatched:
                continue
        raise ConfigurationNotMatched(f"no third cycle configuration for {target}")

    def _thirds(self, i: int, j: int) -> list[int]:
        return [
            k
            for k in self.relevant
            if k not in (i, j) and any(self.graph.edge(k, c) is not None for c in (i, j))
        ]

    def _swap_route(self, i: int, j: int, k: int, trace: list[str]):
        """Letters realizing (3 x) and gamma1 in the canonical frame of the (4,4) pair, via cycle k."""
        frame = self.pair(i, j).frame
        L = frame.labels
        for c in (i, j):
            e = self.graph.edge(k, c)
            if e is None or (e.kind is Connection.TWO_ADJACENT and len(self.puzzle.cycles[k]) == 4):
                continue
            # cycle k and C_c generate the full symmetric group on their union,
            # which contains the two shared vertices of the (4,4) pair
            trace.append("lemma-44-third/pair-route")
            swap = from_cycles(self.n, [(L[2], L[3])])
            word = self.pair(k, c).word(swap, trace)
            gamma1 = Letter.derived("gamma1", [(frame.alpha, -1), (frame.beta, 1)])
            return "swap", Letter.derived("swap34", word), L, gamma1, 4
        match = _match_case(self.letters[i], self.letters[j], self.letters[k])
        if match is not None:
            case, L, alpha, beta, tau = match
            _, body, x = THIRD_CYCLE_CASES[case]
            swap = from_cycles(self.n, [(L[2], L[x - 1])])
            gamma1 = Letter.derived("gamma1", [(alpha, -1), (beta, 1)])
            trace.append(f"lemma-44-third/case{case}")
            if body == "gamma1":
                word = PairSolver(tau, gamma1).word(swap, trace)
            elif body == "gamma2":
                gamma2 = Letter.derived("gamma2", [(alpha, 1), (beta, -1)])
                word = PairSolver(tau, gamma2).word(swap, trace)
            else:
                word = bind(body, {"alpha": alpha, "beta": beta, "tau": tau})
            letter = Letter.derived(f"swap3{x}", word)
            if letter.perm != swap:
                raise AssertionError(f"case {case} word does not give the transposition")
            return "swap", letter, L, gamma1, x
        if set(self.puzzle.cycles[k]) <= set(L):
            # the third cycle stays inside the six vertices: search the group of all three
            trace.append("lemma-44-third/inside-table")
            letters = (frame.alpha, frame.beta, self.letters[k])
            gens = tuple((idx, relabel(l.perm, L)) for idx, l in enumerate(letters))
            return "table", letters, L, _word_table(gens), None
        return None

    def word_44_plus_third(self, i: int, j: int, target: Perm, trace: list[str] | None = None) -> Word:
        """Word for a permutation of the union of a 2-connected (4,4) pair, using a third relevant cycle."""
        trace = trace if trace is not None else []
        key = (min(i, j), max(i, j))
        L = self.pair(i, j).frame.labels
        try:
            canon = relabel(target, L)
        except ValueError as exc:
            raise NotInGroup(str(exc)) from None
        if key not in self._swap_routes:
            routes = []
            for k in self._thirds(i, j):
                tags: list[str] = []
                route = self._swap_route(i, j, k, tags)
                if route is not None:
                    routes.append((route, tags))
            self._swap_routes[key] = routes
        for route, tags in self._swap_routes[key]:
            kind, letter, labels, extra, x = route
            if kind == "swap":
                trace.extend(tags)
                trace.append("lemma-44-third/table")
                return bind(_table_swap(x)[relabel(target, labels)], {"t": letter, "g": extra})
            table = extra
            word = table.get(canon)
            if word is not None:
                trace.extend(tags)
                return bind(word, dict(enumerate(letter)))
        raise ConfigurationNotMatched("no third relevant cycle matches a known configuration")

    def walk_letter(self, key: int, trace: list[str]) -> Letter:
        hit = self._walk_letters.get(key)
        if hit is None:
            sigma = self.lemma.letters[key]
            hit = Letter.derived(f"w{key}", self.local_word(sigma, trace))
            self._walk_letters[key] = hit
        return hit

    def word(self, target: Perm, trace: list[str] | None = None) -> Word:
        trace = trace if trace is not None else []
        if target.is_identity():
            return []
        for letter in self.letters:
            for e in (1, -1):
                if target == letter.perm_power(e):
                    trace.append("thm-generalized/single-shift")
                    return [(letter, e)]
        if not target.is_even():
            fix = next((l for l in self.letters if not l.perm.is_even()), None)
            if fix is None:
                raise NotInGroup("odd target but every cycle has odd length")
            trace.append("thm-generalized/parity-fixup")
            return [(fix, 1)] + self.word(compose(fix.perm_power(-1), target), trace)
        trace.append("thm-generalized/walk")
        out: Word = []
        for k, e in self.lemma.word(target):
            out.append((self.walk_letter(k, trace), e))
        return out


# ---------------------------------------------------------------------------
# dispatch


@dataclass
class Solution:
    moves: list[ShiftMove]
    provenance: list[str] = field(default_factory=list)
    lift: Perm | None = None
    family: PuzzleFamily | None = None
    group: GroupClass | None = None

    def __len__(self) -> int:
        return len(self.moves)

    def to_json_obj(self) -> dict:
        out = {
            "length": len(self.moves),
            "moves": [m.to_json() for m in self.moves],
            "provenance": self.provenance,
        }
        if self.family is not None:
            out["family"] = self.family.describe()
        if self.group is not None:
            out["group"] = self.group.kind.value
        return out


def _dedupe(trace: list[str]) -> list[str]:
    return list(dict.fromkeys(trace))


def _shift_letters(puzzle: Puzzle) -> list[Letter]:
    return [Letter.shift(puzzle, i) for i in range(len(puzzle.cycles))]


def _with_outer_parity(letters: list[Letter], target: Perm, inner, trace: list[str]) -> Word:
    """Run ``inner`` and, if it rejects an odd target, pre-shift along any even cycle."""
    try:
        return inner(target)
    except NotInGroup:
        if target.is_even():
            raise
        fix = next((l for l in letters if not l.perm.is_even()), None)
        if fix is None:
            raise
        trace.append("parity-fixup/extra-cycle")
        return [(fix, 1)] + inner(compose(fix.perm_power(-1), target))


def _pair_moves(puzzle: Puzzle, target: Perm, pair: tuple[int, int], trace: list[str]) -> list[ShiftMove]:
    letters = _shift_letters(puzzle)
    solver = PairSolver(letters[pair[0]], letters[pair[1]])
    return expand(_with_outer_parity(letters, target, lambda t: solver.word(t, trace), trace))


def solve_1connected(puzzle: Puzzle, target: Perm, trace: list[str] | None = None) -> list[ShiftMove]:
    fam = detect_family(puzzle)
    if fam.kind is not FamilyKind.ONE_CONNECTED:
        raise FamilyMismatch(f"expected a 1-connected puzzle, got {fam.kind.value}")
    return _pair_moves(puzzle, target, (0, 1), trace if trace is not None else [])


def solve_2connected(puzzle: Puzzle, target: Perm, trace: list[str] | None = None) -> list[ShiftMove]:
    fam = detect_family(puzzle)
    if fam.kind is not FamilyKind.TWO_CONNECTED:
        raise FamilyMismatch(f"expected a 2-connected puzzle, got {fam.kind.value}")
    return _pair_moves(puzzle, target, (0, 1), trace if trace is not None else [])


def solve_generalized(
    puzzle: Puzzle,
    target: Perm,
    trace: list[str] | None = None,
    solver: GeneralizedSolver | None = None,
) -> list[ShiftMove]:
    trace = trace if trace is not None else []
    fam = detect_family(puzzle)
    if fam.kind is not FamilyKind.GENERALIZED or puzzle.n <= 6:
        raise FamilyMismatch(f"expected a generalized puzzle on more than 6 vertices, got {fam.kind.value}")
    if len(fam.relevant) == 2:
        trace.append("thm-generalized/two-relevant")
        return _pair_moves(puzzle, target, fam.relevant, trace)
    solver = solver or GeneralizedSolver(puzzle, fam.relevant)
    return expand(solver.word(target, trace))


def constructive(family: PuzzleFamily, n: int) -> bool:
    """Whether a constructive procedure covers this family."""
    if family.kind in (FamilyKind.ONE_CONNECTED, FamilyKind.TWO_CONNECTED):
        return True
    return family.kind is FamilyKind.GENERALIZED and n > 6


def solve_permutation(
    puzzle: Puzzle,
    target: Perm,
    trace: list[str] | None = None,
    family: PuzzleFamily | None = None,
    cache: dict | None = None,
) -> list[ShiftMove]:
    """Shift sequence realizing ``target`` from the identity placement."""
    trace = trace if trace is not None else []
    family = family or detect_family(puzzle)
    if family.kind is FamilyKind.ONE_CONNECTED:
        return solve_1connected(puzzle, target, trace)
    if family.kind is FamilyKind.TWO_CONNECTED:
        return solve_2connected(puzzle, target, trace)
    if family.kind is FamilyKind.GENERALIZED and puzzle.n > 6:
        solver = None
        if cache is not None and len(family.relevant) > 2:
            solver = cache.get("generalized")
            if solver is None:
                solver = cache["generalized"] = GeneralizedSolver(puzzle, family.relevant)
        return solve_generalized(puzzle, target, trace, solver)
    raise FamilyMismatch(f"no constructive procedure for {family.kind.value} puzzles on {puzzle.n} vertices")


LIFT_LIMIT = 40320


def lift(f0: Sequence[int], ft: Sequence[int]) -> Perm:
    """A permutation ``pi`` with ``f0[pi(v)] = ft[v]``, keeping matching tokens fixed."""
    n = len(f0)
    pool: dict[int, list[int]] = {}
    image = [0] * n
    for v in range(1, n + 1):
        if f0[v - 1] == ft[v - 1]:
            image[v - 1] = v
        else:
            pool.setdefault(f0[v - 1], []).append(v)
    for v in range(1, n + 1):
        if not image[v - 1]:
            image[v - 1] = pool[ft[v - 1]].pop(0)
    return Perm(image)


def _all_lifts(f0: Sequence[int], ft: Sequence[int]):
    n = len(f0)
    by_color_src: dict[int, list[int]] = {}
    by_color_dst: dict[int, list[int]] = {}
    for v in range(1, n + 1):
        by_color_src.setdefault(f0[v - 1], []).append(v)
        by_color_dst.setdefault(ft[v - 1], []).append(v)
    colors = sorted(by_color_src)
    choices = [itertools.permutations(by_color_src[c]) for c in colors]
    for combo in itertools.product(*[list(c) for c in choices]):
        image = [0] * n
        for c, srcs in zip(colors, combo):
            for v, u in zip(by_color_dst[c], srcs):
                image[v - 1] = u
        yield Perm(image, check=False)


def _lift_count(f0: Sequence[int]) -> int:
    counts: dict[int, int] = {}
    for c in f0:
        counts[c] = counts.get(c, 0) + 1
    return math.prod(math.factorial(k) for k in counts.values())


def solve(
    puzzle: Puzzle,
    f0: Sequence[int],
    ft: Sequence[int],
    peephole: bool = False,
    family: PuzzleFamily | None = None,
    group: GroupClass | None = None,
    state_cap: int | None = None,
    cache: dict | None = None,
) -> Solution:
    """Shift sequence turning placement ``f0`` into ``ft``, verified before returning."""
    puzzle.check()
    try:
        f0 = check_placement(f0, puzzle.n)
        ft = check_placement(ft, puzzle.n)
    except ValueError as exc:
        raise IncompatiblePlacements(str(exc)) from None
    if not compatible(f0, ft):
        raise IncompatiblePlacements("start and target use different color multisets")
    family = family or detect_family(puzzle)
    group = group or classify(puzzle, family)
    if f0 == ft:
        return Solution([], ["trivial"], Perm.identity(puzzle.n), family, group)

    pi = lift(f0, ft)
    trace: list[str] = []
    if group.kind is GroupKind.ALTERNATING and not pi.is_even():
        pairs = [(v, w) for v in range(1, puzzle.n + 1) for w in range(v + 1, puzzle.n + 1) if ft[v - 1] == ft[w - 1]]
        if not pairs:
            raise Unreachable("odd lift, distinct colors and an alternating configuration group")
        v, w = pairs[0]
        image = list(pi.image)
        image[v - 1], image[w - 1] = image[w - 1], image[v - 1]
        pi = Perm(image)
        trace.append("lift/same-color-swap")
    elif group.kind in (GroupKind.SPECIAL_S5, GroupKind.OTHER):
        if _lift_count(f0) <= LIFT_LIMIT:
            data = groups.puzzle_group(puzzle)
            member = next((p for p in _all_lifts(f0, ft) if data.contains(p)), None)
            if member is None:
                raise Unreachable("no color-consistent lift lies in the configuration group")
            pi = member
        elif not constructive(family, puzzle.n):
            return _search_solution(puzzle, f0, ft, family, group, state_cap, peephole)

    if constructive(family, puzzle.n):
        moves = solve_permutation(puzzle, pi, trace, family, cache)
    else:
        trace.append("search")
        moves = _search_moves(puzzle, pi, state_cap)
    if peephole:
        moves = peephole_pass(moves, puzzle)
    if apply_sequence(f0, puzzle, moves) != ft:
        raise AssertionError("emitted sequence does not reach the target placement")
    return Solution(moves, _dedupe(trace), pi, family, group)


def _search_moves(puzzle: Puzzle, pi: Perm, state_cap: int | None) -> list[ShiftMove]:
    from .search import bfs_distance, Infinite

    res = bfs_distance(puzzle, tuple(range(1, puzzle.n + 1)), pi.image, depth_cap=None, state_cap=state_cap)
    if res.distance is Infinite:
        raise Unreachable("target permutation is not reachable")
    return list(res.witness)


def _search_solution(puzzle, f0, ft, family, group, state_cap, peephole) -> Solution:
    from .search import bfs_distance, Infinite

    res = bfs_distance(puzzle, f0, ft, depth_cap=None, state_cap=state_cap)
    if res.distance is Infinite:
        raise Unreachable("target placement is not reachable")
    moves = list(res.witness)
    if peephole:
        moves = peephole_pass(moves, puzzle)
    return Solution(moves, ["search"], None, family, group)
