"""Command-line interface.

Machine output is JSON on stdout (one document per invocation); a short human
summary goes to stderr.  Exit codes: 0 success, 1 negative answer
(unreachable, budget exceeded, invalid sequence), 2 usage or parse error,
3 search cap exceeded.

Instance files hold one instance object or a list of them; a list produces a
list of reports and the largest exit code among them.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import gen as gen_mod
from . import reduction
from .classify import classify, detect_family
from .puzzle import Instance, Puzzle, ShiftMove, apply_sequence
from .search import DEFAULT_DEPTH_CAP, DEFAULT_STATE_CAP, CapExceeded, Infinite, bfs_distance
from .solver import SolverError, Unreachable, solve

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None


def _as_list(obj):
    return (obj, True) if isinstance(obj, list) else ([obj], False)


def _instances(path: str) -> tuple[list[Instance], bool]:
    items, many = _as_list(_load_json(path))
    out = []
    for k, obj in enumerate(items):
        try:
            out.append(Instance.from_json_obj(obj))
        except (ValueError, TypeError) as exc:
            where = f"{path}[{k}]" if many else path
            raise UsageError(f"{where}: {exc}") from None
    return out, many


def _puzzles(path: str) -> tuple[list[Puzzle], bool]:
    items, many = _as_list(_load_json(path))
    out = []
    for k, obj in enumerate(items):
        where = f"{path}[{k}]" if many else path
        try:
            p = Puzzle(obj["n"], obj["cycles"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"{where}: malformed puzzle ({exc})") from None
        problems = p.validate()
        if problems:
            raise UsageError(f"{where}: invalid puzzle: {'; '.join(problems)}")
        out.append(p)
    return out, many


def _emit(reports: list[dict], many: bool) -> None:
    doc = reports if many else reports[0]
    sys.stdout.write(json.dumps(doc) + "\n")


def _classify_one(puzzle: Puzzle) -> tuple[dict, int]:
    fam = detect_family(puzzle)
    group = classify(puzzle, fam)
    report = {"n": puzzle.n, "family": fam.describe(), **group.describe()}
    print(f"{fam.kind.value}: {group.kind.value}, order {group.order}", file=sys.stderr)
    return report, EXIT_OK


def cmd_classify(args) -> int:
    puzzles, many = _puzzles(args.instance)
    results = [_classify_one(p) for p in puzzles]
    _emit([r for r, _ in results], many)
    return max(code for _, code in results)


def _solve_one(job) -> tuple[dict, int, str]:
    inst, verify, peephole, state_cap = job
    try:
        sol = solve(inst.puzzle, inst.start, inst.target, peephole=peephole, state_cap=state_cap)
    except Unreachable as exc:
        return {"reachable": False, "reason": str(exc)}, EXIT_NO, f"unreachable: {exc}"
    except CapExceeded as exc:
        return {"reachable": None, "reason": str(exc)}, EXIT_CAP, f"cap exceeded: {exc}"
    report = {"reachable": True, **sol.to_json_obj()}
    if verify:
        report["verified"] = apply_sequence(inst.start, inst.puzzle, sol.moves) == tuple(inst.target)
    return report, EXIT_OK, f"{len(sol.moves)} shifts via {', '.join(sol.provenance)}"


def _run(fn, jobs: list, workers: int):
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


def cmd_solve(args) -> int:
    instances, many = _instances(args.instance)
    jobs = [(inst, args.verify, args.peephole, args.state_cap) for inst in instances]
    results = _run(_solve_one, jobs, args.jobs)
    for _, _, msg in results:
        print(msg, file=sys.stderr)
    _emit([r for r, _, _ in results], many)
    return max(code for _, code, _ in results)


def _distance_one(job) -> tuple[dict, int, str]:
    inst, budget, depth_cap, state_cap, prune = job
    lower = None
    if prune and inst.roles and {"yellow", "u", "w"} <= set(inst.roles):
        lower = reduction.bound_from_roles(inst.roles)
    cap = budget if budget is not None else depth_cap
    try:
        res = bfs_distance(inst.puzzle, inst.start, inst.target, depth_cap=cap, state_cap=state_cap, lower_bound=lower)
    except CapExceeded as exc:
        if budget is not None and not str(exc).startswith("state cap"):
            report = {"budget": budget, "decision": "no", "distance": None, "explored": exc.explored}
            return report, EXIT_NO, f"distance exceeds budget {budget}"
        return {"decision": "unknown", "reason": str(exc), "explored": exc.explored}, EXIT_CAP, f"cap exceeded: {exc}"
    reachable = res.distance is not Infinite
    report = {
        "distance": res.distance if reachable else None,
        "reachable": reachable,
        "explored": res.explored,
        "witness": [m.to_json() for m in res.witness] if res.witness is not None else None,
    }
    if budget is not None:
        yes = reachable and res.distance <= budget
        report = {"budget": budget, "decision": "yes" if yes else "no", **report}
        return report, EXIT_OK if yes else EXIT_NO, f"decision {'yes' if yes else 'no'} (budget {budget})"
    if not reachable:
        return report, EXIT_NO, "unreachable"
    return report, EXIT_OK, f"distance {res.distance}"


def cmd_distance(args) -> int:
    instances, many = _instances(args.instance)
    jobs = []
    for inst in instances:
        budget = args.budget if args.budget is not None else (inst.budget if args.use_budget else None)
        jobs.append((inst, budget, args.depth_cap, args.state_cap, not args.no_prune))
    results = _run(_distance_one, jobs, args.jobs)
    for _, _, msg in results:
        print(msg, file=sys.stderr)
    _emit([r for r, _, _ in results], many)
    return max(code for _, code, _ in results)


def cmd_reduce3dm(args) -> int:
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    try:
        inst = reduction.parse_3dm(text)
        out = reduction.reduce(inst)
    except ValueError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    _emit([out.instance().to_json_obj()], False)
    print(f"|V|={out.puzzle.n}, {len(out.puzzle.cycles)} cycles, budget {out.budget}", file=sys.stderr)
    return EXIT_OK


def _load_moves(path: str) -> list[ShiftMove]:
    obj = _load_json(path)
    if isinstance(obj, dict):
        obj = obj.get("moves", obj.get("witness"))
    if not isinstance(obj, list):
        raise UsageError(f"{path}: expected a list of moves or an object with 'moves'")
    try:
        return [ShiftMove.from_json(m) for m in obj]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: malformed move ({exc})") from None


def cmd_extract(args) -> int:
    instances, many = _instances(args.reduction)
    if many:
        raise UsageError("extract takes a single reduction instance")
    try:
        out = reduction.output_from_instance(instances[0])
    except ValueError as exc:
        raise UsageError(f"{args.reduction}: {exc}") from None
    moves = _load_moves(args.sequence)
    try:
        chosen = reduction.sequence_to_matching(out, moves)
    except (reduction.SequenceInvalid, reduction.ExtractionFailed) as exc:
        _emit([{"valid": False, "reason": str(exc)}], False)
        print(f"invalid sequence: {exc}", file=sys.stderr)
        return EXIT_NO
    triplets = sorted(chosen)
    _emit([{"valid": True, "matching": [i + 1 for i in triplets],
            "triplets": [list(out.source.triplets[i]) for i in triplets]}], False)
    print(f"matching of {len(triplets)} triplets", file=sys.stderr)
    return EXIT_OK


def cmd_gen(args) -> int:
    cfg = gen_mod.GenConfig(
        family=args.family,
        a=args.a,
        b=args.b,
        n=args.n,
        extra_cycles=args.extra,
        colors=args.colors,
        count=args.count,
        seed=args.seed,
    )
    try:
        instances = gen_mod.generate(cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit([[inst.to_json_obj() for inst in instances]], False)
    print(f"{len(instances)} {args.family} instances (seed {args.seed})", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cycleshift", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="family, configuration group and component count")
    p.add_argument("instance")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="constructive shift sequence from start to target")
    p.add_argument("instance")
    p.add_argument("--verify", action="store_true", help="re-apply the sequence and report the check")
    p.add_argument("--peephole", action="store_true", help="cancel adjacent inverse shifts")
    p.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("distance", help="exact distance by breadth-first search")
    p.add_argument("instance")
    p.add_argument("--budget", type=int, help="decide whether the distance is at most this")
    p.add_argument("--use-budget", action="store_true", help="decide against the instance's own budget")
    p.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP)
    p.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
    p.add_argument("--no-prune", action="store_true", help="ignore the reduction lower bound")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("reduce3dm", help="build a token shift instance from a 3DM instance")
    p.add_argument("file")
    p.set_defaults(func=cmd_reduce3dm)

    p = sub.add_parser("extract", help="read a matching off a shift sequence of a reduction")
    p.add_argument("reduction")
    p.add_argument("sequence")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("gen", help="seeded random instances")
    p.add_argument("family", choices=["1connected", "2connected", "generalized"])
    p.add_argument("--a", type=int, default=3)
    p.add_argument("--b", type=int, default=4)
    p.add_argument("--n", type=int, default=9)
    p.add_argument("--extra", type=int, default=0, help="extra random cycles (generalized)")
    p.add_argument("--colors", type=int)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", None) is not None and args.budget < 0:
        parser.error("--budget must be non-negative")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO


if __name__ == "__main__":
    sys.exit(main())
