"""Desk-scale check of the 3DM reduction: budget decision against brute force.

    python3 scripts/reduction_desk_check.py --m 2 --max-n 4
"""

import argparse
import itertools
import time

from cycleshift.reduction import ThreeDM, distance_lower_bound, perfect_matchings, reduce
from cycleshift.search import decide_budget


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--m", type=int, default=2)
    parser.add_argument("--max-n", type=int, default=4)
    args = parser.parse_args()
    universe = list(itertools.product(range(1, args.m + 1), repeat=3))
    t0 = time.perf_counter()
    agree = total = 0
    for n in range(args.m, args.max_n + 1):
        for triplets in itertools.combinations(universe, n):
            inst = ThreeDM(args.m, triplets)
            out = reduce(inst, allow_uncovered=True)
            yes, _ = decide_budget(out.puzzle, out.start, out.target, out.budget,
                                   lower_bound=distance_lower_bound(out))
            has = next(perfect_matchings(inst), None) is not None
            total += 1
            agree += yes == has
            if yes != has:
                print(f"disagreement: {triplets} bfs={yes} matching={has}")
    print(f"{agree}/{total} agree in {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
