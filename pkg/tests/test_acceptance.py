"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v``; the report lines are printed
even when output capture is on.  Tolerances are pinned in the constants below.
"""

import itertools
import math
import random
import time
import timeit
import zlib

import pytest

from cycleshift import groups
from cycleshift.classify import FamilyKind, GroupKind, classify, detect_family, psi_image
from cycleshift.gen import SplitMix64, generalized_puzzle, pair_puzzle, random_target
from cycleshift.perm import Perm, compose, from_cycles, parse_perm
from cycleshift.puzzle import Puzzle, ShiftMove, apply_sequence, identity_placement
from cycleshift.reduction import (
    ThreeDM,
    distance_lower_bound,
    matching_to_sequence,
    perfect_matchings,
    reduce,
    sequence_to_matching,
    unused_elements,
)
from cycleshift.search import DEFAULT_STATE_CAP, Infinite, bfs_distance, decide_budget
from cycleshift.solver import (
    K_GENERAL,
    K_PAIR,
    THIRD_CYCLE_CASES,
    GeneralizedSolver,
    PairSolver,
    Unreachable,
    case_word,
    solve,
)
from cycleshift.walk import WalkLemma, build_walk
from cycleshift.words import Letter, evaluate, evaluate_symbolic

from conftest import FIG4_CYCLES

COMPOSE_LIMIT_S = 1e-3
PSI_LIMIT_S = 1.0
ORDER_MATRIX_LIMIT_S = 30.0
CASES_LIMIT_S = 1.0
REDUCTION_LIMIT_S = 600.0
REDUCTION_STATE_CAP = 50_000_000
TARGETS_PER_INSTANCE = 200
COMPLETENESS_SAMPLE = 500
PSI_PAIRS = 1000


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")


# ---------------------------------------------------------------------------
# shared corpus


def _corpus():
    out = []
    for kind, a, b in [
        ("1connected", 2, 5), ("1connected", 3, 3), ("1connected", 3, 4), ("1connected", 4, 4),
        ("1connected", 5, 7), ("1connected", 6, 6), ("2connected", 2, 4), ("2connected", 3, 3),
        ("2connected", 4, 4), ("2connected", 3, 5), ("2connected", 4, 5), ("2connected", 5, 5),
        ("2connected", 6, 6), ("2connected", 4, 8), ("2connected", 7, 7),
    ]:
        out.append((f"{kind}-{a}-{b}", pair_puzzle(kind, a, b, SplitMix64(a * 10 + b))))
    out.append(("fig4", Puzzle(12, FIG4_CYCLES)))
    out.append(("44-plus-third", Puzzle(8, [(1, 2, 3, 4), (3, 4, 5, 6), (1, 7, 3, 4), (7, 8, 5)])))
    out.append(("leaf-2-cycles", Puzzle(8, [(1, 2, 3, 4, 5), (5, 6, 7), (7, 8), (2, 8)])))
    out.append(("all-odd-chain", Puzzle(9, [(1, 2, 3), (3, 4, 5), (5, 6, 7), (7, 8, 9)])))
    for seed, n, extra in [(1, 7, 0), (2, 8, 1), (3, 9, 0), (4, 10, 2), (5, 11, 1), (6, 12, 0), (7, 6, 0), (8, 5, 1)]:
        out.append((f"generalized-{n}-s{seed}", generalized_puzzle(n, SplitMix64(seed), extra_cycles=extra)))
    out.append(("unrecognized", Puzzle(6, [(1, 2, 3), (4, 5, 6), (2, 5)])))
    return out


CORPUS = _corpus()
_lengths: dict[str, list[tuple[int, int]]] = {}


# ---------------------------------------------------------------------------


def test_criterion_01_composition_convention(capsys):
    p = parse_perm("(1 2 3)", 5)
    q = parse_perm("(3 4 5)", 5)
    got = compose(p, q).image
    reps = 1000
    per_call = min(timeit.repeat(lambda: compose(p, q), number=reps, repeat=5)) / reps
    ok = got == (2, 3, 4, 5, 1) and got != (2, 4, 1, 5, 3) and per_call < COMPOSE_LIMIT_S
    report(capsys, 1, ok, f"(1 2 3)(3 4 5) = {list(got)}; {per_call * 1e6:.1f} us per compose")
    assert ok


def test_criterion_02_psi_fixtures(capsys):
    t0 = time.perf_counter()
    alpha = parse_perm("(1 2 3 4)", 6)
    beta = parse_perm("(3 4 5 6)", 6)
    pa, pb = psi_image(alpha), psi_image(beta)
    fixtures = [
        ("psi((1 2 3 4))", pa, parse_perm("(2 5 3 6)", 6)),
        ("psi((3 4 5 6))", pb, parse_perm("(1 3 5 2)", 6)),
        ("psi(a)psi(b)", compose(pa, pb), parse_perm("(1 6 2)", 6)),
    ]
    rng = random.Random(2)
    hom = 0
    for _ in range(PSI_PAIRS):
        p = Perm(rng.sample(range(1, 7), 6))
        q = Perm(rng.sample(range(1, 7), 6))
        hom += psi_image(compose(p, q)) == compose(psi_image(p), psi_image(q))
    elapsed = time.perf_counter() - t0
    mismatches = [f"{name} = {got} (expected {want})" for name, got, want in fixtures if got != want]
    ok = not mismatches and hom == PSI_PAIRS and elapsed < PSI_LIMIT_S
    detail = f"homomorphism {hom}/{PSI_PAIRS}, {elapsed:.2f} s"
    if mismatches:
        detail += "; " + "; ".join(mismatches)
    report(capsys, 2, ok, detail)
    assert not mismatches, "; ".join(mismatches)
    assert hom == PSI_PAIRS and elapsed < PSI_LIMIT_S


def test_criterion_03_group_order_matrix(capsys):
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for kind in ("1connected", "2connected"):
        for a in range(2, 10):
            for b in range(a, 10):
                n = a + b - 1 if kind == "1connected" else a + b - 2
                if n > 9 or (kind == "2connected" and n < 3):
                    continue
                if kind == "2connected" and (a, b) == (4, 4):
                    want = 120
                else:
                    want = math.factorial(n) // (2 if a % 2 and b % 2 else 1)
                got = groups.puzzle_group(pair_puzzle(kind, a, b)).order()
                checked += 1
                if got != want:
                    bad.append(f"{kind} ({a},{b}): {got} != {want}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < ORDER_MATRIX_LIMIT_S
    report(capsys, 3, ok, f"{checked} shapes, {len(bad)} mismatches, {elapsed:.2f} s")
    assert ok, bad


def test_criterion_04_case_identities(capsys):
    t0 = time.perf_counter()
    results = {}
    for case, (tau_shape, word, x) in THIRD_CYCLE_CASES.items():
        expected = from_cycles(8, [(3, x)])
        if isinstance(word, str):
            puzzle = Puzzle(8, [(1, 2, 3, 4), (3, 4, 5, 6), tau_shape])
            alpha, beta, tau = (Letter.shift(puzzle, i) for i in range(3))
            if word == "gamma1":
                g = Letter.derived("gamma1", [(alpha, -1), (beta, 1)])
            else:
                g = Letter.derived("gamma2", [(alpha, 1), (beta, -1)])
            value = evaluate(PairSolver(tau, g).word(expected, []), 8)
        else:
            _, value, expected = case_word(case)
        results[case] = value == expected
    elapsed = time.perf_counter() - t0
    ok = all(results.values()) and elapsed < CASES_LIMIT_S
    report(capsys, 4, ok, f"{sum(results.values())}/8 cases give their transposition, {elapsed:.2f} s")
    assert ok, results


def test_criterion_05_solver_soundness(capsys):
    total = 0
    failures = []
    for name, puzzle in CORPUS:
        assert puzzle.n <= 12
        rng = SplitMix64(zlib.crc32(name.encode()))
        group = classify(puzzle)
        cache = {}
        lengths = _lengths.setdefault(name, [])
        for k in range(TARGETS_PER_INSTANCE):
            colors = None if k % 4 else 1 + rng.below(3)
            target = random_target(puzzle, rng, None)
            f0 = identity_placement(puzzle.n)
            if colors:
                f0 = tuple((v - 1) * colors // puzzle.n + 1 for v in f0)
                target = tuple(f0[t - 1] for t in target)
            sol = solve(puzzle, f0, target, group=group, cache=cache)
            total += 1
            if apply_sequence(f0, puzzle, sol.moves) != tuple(target):
                failures.append((name, target))
            lengths.append((puzzle.n, len(sol.moves)))
    ok = not failures and len(CORPUS) >= 20
    report(capsys, 5, ok, f"{len(CORPUS)} instances, {total} targets, {len(failures)} failures")
    assert ok, failures[:5]


def test_criterion_06_completeness(capsys):
    disagreements = []
    puzzles = 0
    samples = 0
    for name, puzzle in CORPUS:
        n = puzzle.n
        if n > 7:
            continue
        puzzles += 1
        data = groups.puzzle_group(puzzle)
        group = classify(puzzle)
        everything = [Perm(p) for p in itertools.permutations(range(1, n + 1))]
        if len(everything) > 720:
            rng = random.Random(n)
            perms = rng.sample(everything, 700)
        else:
            perms = everything
        assert len(perms) >= COMPLETENESS_SAMPLE or len(perms) == len(everything)
        cache = {}
        for p in perms:
            member = data.contains(p)
            reachable = bfs_distance(puzzle, identity_placement(n), p.image, depth_cap=None).distance is not Infinite
            try:
                solve(puzzle, identity_placement(n), p.image, group=group, cache=cache)
                solved = True
            except Unreachable:
                solved = False
            samples += 1
            if not solved == member == reachable:
                disagreements.append((name, p, solved, member, reachable))
    ok = not disagreements
    report(capsys, 6, ok, f"{puzzles} puzzles with n <= 7, {samples} permutations, {len(disagreements)} disagreements")
    assert ok, disagreements[:5]


def test_criterion_07_length_bounds(capsys):
    if not _lengths:
        for name, puzzle in CORPUS:
            rng = SplitMix64(zlib.crc32(name.encode()))
            _lengths[name] = [
                (puzzle.n, len(solve(puzzle, identity_placement(puzzle.n), random_target(puzzle, rng)).moves))
                for _ in range(20)
            ]
    pair_max = 0.0
    gen_max = 0.0
    over = []
    for name, puzzle in CORPUS:
        fam = detect_family(puzzle)
        for n, length in _lengths[name]:
            if fam.kind in (FamilyKind.ONE_CONNECTED, FamilyKind.TWO_CONNECTED):
                pair_max = max(pair_max, length / n**2)
                if length > K_PAIR * n**2:
                    over.append((name, length))
            elif fam.kind is FamilyKind.GENERALIZED and n > 6:
                gen_max = max(gen_max, length / n**5)
                if length > K_GENERAL * n**5:
                    over.append((name, length))
    ok = not over
    report(
        capsys,
        7,
        ok,
        f"pair max {pair_max:.2f} n^2 (K={K_PAIR}), generalized max {gen_max:.4f} n^5 (K={K_GENERAL})",
    )
    assert ok, over


def test_criterion_08_walk_bound(capsys):
    worst = 0.0
    walks = 0
    bad = []
    for n in (4, 5, 6):
        for seed in range(40):
            puzzle = generalized_puzzle(n, SplitMix64(1000 + seed), extra_cycles=seed % 3)
            walk = build_walk(puzzle, detect_family(puzzle).relevant)
            lemma = WalkLemma(walk, n)
            walks += 1
            for a, b, c in itertools.permutations(range(1, n + 1), 3):
                if a != min(a, b, c):
                    continue
                target = from_cycles(n, [(a, b, c)])
                word = lemma.cycle_word(target)
                if evaluate_symbolic(word, lemma.letters, n) != target or len(word) > 3 * n:
                    bad.append((walk, target, len(word)))
                worst = max(worst, len(word) / n)
    ok = not bad
    report(capsys, 8, ok, f"{walks} walks, every 3-cycle within {worst:.2f} n letters (bound 3n)")
    assert ok, bad[:5]


def _distance_within(out, budget):
    yes, res = decide_budget(
        out.puzzle, out.start, out.target, budget,
        state_cap=REDUCTION_STATE_CAP, lower_bound=distance_lower_bound(out),
    )
    return yes, res


def _check_reduction(inst, problems):
    matchings = list(perfect_matchings(inst))
    if inst.n < inst.m:
        # no reduction is defined; fewer triplets than elements never match
        if matchings:
            problems.append((inst, "n < m but a matching exists"))
        return bool(matchings)
    out = reduce(inst, allow_uncovered=True)
    yes, res = _distance_within(out, 3 * inst.n)
    if yes != bool(matchings):
        problems.append((inst, f"bfs says {yes}, brute force finds {len(matchings)}"))
    if yes:
        if res.distance < 3 * inst.n:
            problems.append((inst, f"distance {res.distance} below 3n"))
        got = sequence_to_matching(out, res.witness)
        if tuple(sorted(got)) not in matchings:
            problems.append((inst, "extracted triplets are not a matching"))
    for M in matchings:
        seq = matching_to_sequence(out, M)
        if len(seq) != 3 * inst.n or sequence_to_matching(out, seq) != set(M):
            problems.append((inst, f"round trip failed for {M}"))
    return bool(matchings)


def test_criterion_09_reduction_desk_scale(capsys):
    t0 = time.perf_counter()
    problems = []
    counts = {"instances": 0, "satisfiable": 0, "uncovered": 0}
    # every labelled instance with m <= 2, n <= 4 (a superset of one per symmetry class)
    for m in (1, 2):
        universe = list(itertools.product(range(1, m + 1), repeat=3))
        for n in range(1, 5):
            for triplets in itertools.combinations(universe, n):
                inst = ThreeDM(m, triplets)
                counts["instances"] += 1
                counts["uncovered"] += bool(unused_elements(inst))
                counts["satisfiable"] += _check_reduction(inst, problems)
    exhaustive = counts["instances"]
    rng = random.Random(9)
    universe = list(itertools.product(range(1, 4), repeat=3))
    for k in range(50):
        n = rng.randint(3, 5)
        if k % 2 == 0:
            xs, ys, zs = (rng.sample(range(1, 4), 3) for _ in range(3))
            planted = set(zip(xs, ys, zs))
            rest = [t for t in universe if t not in planted]
            triplets = list(planted) + rng.sample(rest, n - 3)
            rng.shuffle(triplets)
        else:
            triplets = rng.sample(universe, n)
        inst = ThreeDM(3, tuple(triplets))
        counts["instances"] += 1
        counts["uncovered"] += bool(unused_elements(inst))
        counts["satisfiable"] += _check_reduction(inst, problems)
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed <= REDUCTION_LIMIT_S
    report(
        capsys,
        9,
        ok,
        f"{exhaustive} exhaustive + 50 random instances, {counts['satisfiable']} satisfiable, "
        f"{counts['uncovered']} with unused elements, {len(problems)} problems, {elapsed:.1f} s",
    )
    assert ok, problems[:5]


def test_criterion_10_size_formulas(capsys):
    rng = random.Random(10)
    bad = 0
    for _ in range(100):
        m = rng.randint(1, 4)
        universe = list(itertools.product(range(1, m + 1), repeat=3))
        n = rng.randint(m, min(len(universe), 12))
        inst = ThreeDM(m, tuple(rng.sample(universe, n)))
        out = reduce(inst, allow_uncovered=True)
        bad += out.puzzle.n != 6 * n + 2 or len(out.puzzle.cycles) != 4 * n
    ok = bad == 0
    report(capsys, 10, ok, f"100 random instances, {bad} violate |V| = 6n+2 or |C| = 4n")
    assert ok
