"""Reproduce the small fixed examples: composition order, the (4,4) group and a reduction."""

from cycleshift import Puzzle, classify, detect_family, parse_perm, compose, solve
from cycleshift.classify import psi_image
from cycleshift.puzzle import apply_sequence, identity_placement
from cycleshift.reduction import ThreeDM, matching_to_sequence, reduce


def main():
    p, q = parse_perm("(1 2 3)", 5), parse_perm("(3 4 5)", 5)
    print("(1 2 3)(3 4 5) =", list(compose(p, q).image), "=", compose(p, q))

    puzzle = Puzzle(5, [(1, 2, 3), (3, 4, 5)])
    sol = solve(puzzle, identity_placement(5), (2, 3, 4, 5, 1))
    print("shifts for [2 3 4 5 1]:", [m.to_json() for m in sol.moves])

    p44 = Puzzle(6, [(1, 2, 3, 4), (3, 4, 5, 6)])
    group = classify(p44)
    print("2-connected (4,4):", group.kind.value, "order", group.order)
    a, b = parse_perm("(1 2 3 4)", 6), parse_perm("(3 4 5 6)", 6)
    print("psi(alpha) =", psi_image(a), " psi(beta) =", psi_image(b), " product =", compose(psi_image(a), psi_image(b)))

    fig4 = Puzzle(12, [(1, 2, 3, 4, 5), (5, 6, 7), (7, 8, 9, 10, 11), (10, 12, 11), (1, 3, 10, 2, 8, 12),
                       (2, 6, 9), (6, 4, 9, 11, 2), (1, 5, 8), (1, 8, 12, 5, 11)])
    fam = detect_family(fig4)
    print("generalized example: relevant cycles", fam.relevant, "group", classify(fig4).kind.value)

    inst = ThreeDM(2, ((1, 1, 1), (2, 2, 2), (1, 2, 1)))
    out = reduce(inst)
    seq = matching_to_sequence(out, [0, 1])
    print(f"reduction: |V|={out.puzzle.n}, cycles={len(out.puzzle.cycles)}, budget={out.budget}, "
          f"witness length {len(seq)}, reaches target: {apply_sequence(out.start, out.puzzle, seq) == out.target}")


if __name__ == "__main__":
    main()
