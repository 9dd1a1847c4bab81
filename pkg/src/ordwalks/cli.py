"""Command line entry point: ``ordwalks <group> <command> [flags]``.

Exit status is 0 when every verdict passes, 1 on a failed or undecided
check, and 2 on usage errors (bad flags, malformed CNF, cap violations).
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import __version__, lspace, souslin
from .ordinal import OrdinalError, parse_cnf
from .report import dumps_json, render_report, rows_to_csv, rows_to_table
from .sampling import separation_pairs
from .suites import SUITES, run_explore, run_verify
from .walks import HALF_OPEN, MODES, WalkOracle


class UsageError(Exception):
    pass


def _cnf(text: str):
    try:
        return parse_cnf(text)
    except OrdinalError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _cnf_list(text: str):
    return [_cnf(t.strip()) for t in text.split(",") if t.strip()]


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=MODES, default=HALF_OPEN, help="intersection convention for rho_1")
    p.add_argument("--depth", type=int, default=4, help="sequence depth for order checks")
    p.add_argument("--precision", type=int, default=lspace.START_PRECISION, help="starting binary precision")
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--out", type=Path, help="write output here instead of stdout")
    p.add_argument("--timings", action="store_true", help="include runtime_ms in reports (breaks byte-identity)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="ordwalks", description="Verify ordinal-walk and order-topology facts.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    walk = groups.add_parser("walk", help="walk queries").add_subparsers(dest="command", required=True)
    for name in ("trace", "rho1", "osc"):
        q = walk.add_parser(name, parents=[common])
        q.add_argument("--alpha", type=_cnf, required=True)
        q.add_argument("--beta", type=_cnf, required=True)
    walk.add_parser("verify-facts", parents=[common])

    ls = groups.add_parser("lspace", help="torus points and the band separation").add_subparsers(dest="command", required=True)
    ev = ls.add_parser("eval", parents=[common])
    ev.add_argument("--beta", type=_cnf, required=True)
    ev.add_argument("--coords", type=_cnf_list, required=True, help="comma separated CNF coordinates")
    sep = ls.add_parser("separate", parents=[common])
    sep.add_argument("--pairs", type=int, default=20, help="number of X-Y pairs to sample")

    order = groups.add_parser("order", help="the first-disagreement order").add_subparsers(dest="command", required=True)
    order.add_parser("check", parents=[common])
    order.add_parser("cellular", parents=[common])

    verify = groups.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("--suite", choices=SUITES, default="all")

    explore = groups.add_parser("explore", parents=[common], help="emit an exploration table")
    explore.add_argument("--kind", choices=("e-table", "osc-histogram"), required=True)
    explore.add_argument("--betas", type=_cnf_list, help="e-table rows; default w^3+w*8,w^2+w*9")
    explore.add_argument("--xis", type=_cnf_list, help="e-table columns; default 0,10,30,40,90,200")
    explore.add_argument("--row-cap", type=int, default=100_000)
    return parser


def _walk_query(args) -> tuple:
    oracle = WalkOracle(mode=args.mode)
    a, b = args.alpha, args.beta
    if a > b:
        raise UsageError(f"need alpha <= beta, got {a} > {b}")
    if args.command == "trace":
        result = [str(x) for x in oracle.lower_trace(a, b)]
    elif args.command == "rho1":
        result = oracle.rho1(a, b)
    else:
        result = {"osc": oracle.osc(a, b), "set": [str(x) for x in oracle.osc_set(a, b)]}
    out = {
        "query": {"op": args.command, "alpha": str(a), "beta": str(b)},
        "result": result,
        "convention": args.mode,
        "depth": oracle.depth(a, b),
    }
    return dumps_json(out), True


def _lspace_eval(args) -> tuple:
    oracle = WalkOracle(mode=args.mode)
    basis = lspace.RotationBasis(args.coords)
    point = lspace.w_point(args.beta, basis.coords, oracle, basis)
    coords = []
    for xi in basis.coords:
        z = point[xi]
        angle = z.angle(args.precision)
        coords.append({
            "xi": str(xi),
            "generator": basis.index(xi),
            "prime": lspace.prime_for(basis.index(xi)),
            "exponent": dict(z.powers).get(basis.index(xi), 0),
            "angle": {"exact": str(angle.value), "float": float(angle.value), "error": str(angle.error)},
        })
    out = {"beta": str(args.beta), "convention": args.mode, "precision": args.precision, "coords": coords}
    return dumps_json(out), True


def _lspace_separate(args) -> tuple:
    pairs = separation_pairs(random.Random(args.seed), args.pairs)
    oracle = WalkOracle(mode=args.mode)
    try:
        rep = lspace.separation_experiment(pairs, oracle, precision=args.precision)
    except lspace.SeparationError as exc:
        return dumps_json({"error": str(exc), "seed": args.seed, "pairs": args.pairs}), False
    out = rep.to_dict()
    out["seed"] = args.seed
    return dumps_json(out), rep.passed


def _order(args) -> tuple:
    if args.depth < 1 or args.depth > 10:
        raise UsageError("depth must be in 1..10")
    if args.command == "check":
        rep = souslin.check_order(args.depth)
        out = {"depth": args.depth, "passed": rep.passed,
               "checks": {k: {"passed": ok, "witness": w} for k, (ok, w) in rep.checks.items()}}
        return dumps_json(out), rep.passed
    res = souslin.cellular_family_check(args.depth)
    return dumps_json(res), res["passed"]


def _explore(args) -> tuple:
    header, rows = run_explore(args.kind, samples=args.samples, seed=args.seed, mode=args.mode,
                               betas=args.betas, xis=args.xis, row_cap=args.row_cap)
    if args.format == "csv":
        return rows_to_csv(header, rows), True
    if args.format == "table":
        return rows_to_table(header, rows), True
    return dumps_json([dict(zip(header, r)) for r in rows]), True


def dispatch(args) -> tuple:
    if args.samples < 1 and not (args.group == "explore"):
        raise UsageError("--samples must be >= 1")
    if args.group == "walk":
        if args.command == "verify-facts":
            rep = run_verify("facts", args.samples, args.seed, args.mode, args.depth, args.precision)
            return render_report(rep, args.format, args.timings), rep.passed
        return _walk_query(args)
    if args.group == "lspace":
        return _lspace_eval(args) if args.command == "eval" else _lspace_separate(args)
    if args.group == "order":
        return _order(args)
    if args.group == "verify":
        rep = run_verify(args.suite, args.samples, args.seed, args.mode, args.depth, args.precision)
        return render_report(rep, args.format, args.timings), rep.passed
    return _explore(args)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, ok = dispatch(args)
    except (UsageError, OrdinalError, ValueError, KeyError) as exc:
        print(f"ordwalks: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
