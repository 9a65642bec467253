"""Measure emitted shift counts against the documented length constants.

    python3 scripts/bench_lengths.py --targets 50 --seed 0
"""

import argparse
import json

from cycleshift.classify import FamilyKind, detect_family
from cycleshift.gen import SplitMix64, generalized_puzzle, pair_puzzle, random_target
from cycleshift.perm import Perm
from cycleshift.solver import K_GENERAL, K_PAIR, solve_permutation
from cycleshift.words import (
    K_ADJ,
    K_BUBBLE,
    K_NCYCLE,
    word_an_adjacent_3cycles,
    word_an_ncycle_3cycle,
    word_sn_bubble,
)


def word_ratios(rng, sizes, reps):
    out = {"bubble": 0.0, "ncycle": 0.0, "adjacent": 0.0}
    for n in sizes:
        for _ in range(reps):
            p = Perm(rng.shuffle(list(range(1, n + 1))))
            out["bubble"] = max(out["bubble"], len(word_sn_bubble(p)) / n**2)
            if not p.is_even():
                image = list(p.image)
                image[0], image[1] = image[1], image[0]
                p = Perm(image)
            out["ncycle"] = max(out["ncycle"], len(word_an_ncycle_3cycle(p)) / n**2)
            out["adjacent"] = max(out["adjacent"], len(word_an_adjacent_3cycles(p)) / n**2)
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--targets", type=int, default=30)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = SplitMix64(args.seed)

    rows = []
    for kind in ("1connected", "2connected"):
        for a, b in [(2, 9), (3, 8), (4, 4), (4, 7), (5, 6), (6, 6), (3, 10)]:
            p = pair_puzzle(kind, a, b, rng)
            worst = max(len(solve_permutation(p, Perm(random_target(p, rng)))) for _ in range(args.targets))
            rows.append({"family": kind, "a": a, "b": b, "n": p.n, "max": worst, "ratio": worst / p.n**2})
    for n in (7, 9, 11, 13):
        p = generalized_puzzle(n, rng, extra_cycles=1)
        cache = {}
        worst = max(
            len(solve_permutation(p, Perm(random_target(p, rng)), cache=cache)) for _ in range(args.targets)
        )
        assert detect_family(p).kind is FamilyKind.GENERALIZED
        rows.append({"family": "generalized", "n": n, "max": worst, "ratio": worst / n**5})

    summary = {
        "words": word_ratios(rng, (6, 10, 16, 24), args.targets),
        "word_constants": {"bubble": K_BUBBLE, "ncycle": K_NCYCLE, "adjacent": K_ADJ},
        "pair_max_ratio": max(r["ratio"] for r in rows if r["family"] != "generalized"),
        "pair_constant": K_PAIR,
        "generalized_max_ratio": max(r["ratio"] for r in rows if r["family"] == "generalized"),
        "generalized_constant": K_GENERAL,
        "rows": rows,
    }
    print(json.dumps(summary, indent=2))


if __name__ == "__main__":
    main()
