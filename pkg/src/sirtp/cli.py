"""Command-line entry point.

Exit codes: 0 success, 1 a check failed, 2 usage or malformed input,
3 an emitted solution failed its own verification (a solver bug).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import bench, docs, oracle, solver
from .analysis import Mode, verify_pair
from .core import InputRangeError, SirtpInstance
from .render import render_svg

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

ALGORITHMS = ("algsirtp", "euclid", "square-transfer")


class _UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


def _rational(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _UsageError(f"cannot read {path}: {e.strerror}") from None


def _instance(p: int, q: int) -> SirtpInstance:
    try:
        return SirtpInstance(p, q)
    except InputRangeError as e:
        raise _UsageError(str(e)) from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_solve(args) -> int:
    inst = _instance(args.p, args.q)
    norm = inst.normalized()
    if args.algorithm == "square-transfer" and (norm.q != norm.p + 1 or norm.p < 2):
        raise _UsageError("square-transfer solves SIRTP(p, p+1) with p >= 2 only")
    if args.trace and args.algorithm != "algsirtp":
        raise _UsageError("--trace is only available for --algorithm=algsirtp")

    if args.algorithm == "algsirtp":
        size, trace = solver.algsirtp_size(inst)
    elif args.algorithm == "euclid":
        size, trace = solver.euclid_sirtp_size(inst), None
    else:
        size, trace = solver.square_transfer_pair(norm.p).size, None
    print(size)
    if args.trace:
        for i, r in enumerate(trace.rounds):
            print(f"round {i}: p={r.p} q={r.q} delta={r.delta} branch={r.branch} added={r.added}")
        print(f"depth {trace.depth}")

    if not (args.emit or args.svg):
        return EXIT_OK
    try:
        if args.algorithm == "algsirtp":
            pair = solver.algsirtp_partition(inst, args.max_modules)
        elif args.algorithm == "euclid":
            pair = solver.euclid_sirtp(inst, args.max_modules)
        else:
            pair = solver.square_transfer_pair(norm.p)
            if inst.p > inst.q:
                pair = pair.swapped()
    except ValueError as e:
        raise _UsageError(str(e)) from None
    report = verify_pair(pair, Mode.STRICT)
    if not report.ok or pair.size != size:
        for v in report.violations:
            print(f"internal: {v}", file=sys.stderr)
        print("internal: emitted solution failed verification", file=sys.stderr)
        return EXIT_INTERNAL
    if args.emit:
        _write(args.emit, docs.dumps(docs.pair_document(pair)))
    if args.svg:
        _write(args.svg, render_svg(pair, args.scale))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        pair = docs.read_pair(_read(args.path))
    except docs.DocumentError as e:
        print(f"malformed document: {e}", file=sys.stderr)
        return EXIT_USAGE
    report = verify_pair(pair, Mode(args.mode))
    for v in report.violations:
        print(v)
    if not report.ok:
        return EXIT_FAIL
    print(f"ok: {pair.size} modules, {args.mode}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = _instance(args.p, args.q)
    budget = oracle.Budget(max_area=args.max_area, time_ms=args.budget_ms)
    try:
        res = oracle.min_sirtp(inst, budget)
    except oracle.BudgetError as e:
        raise _UsageError(f"{e}; raise --max-area to override") from None
    print(res.min_size)
    if not res.exhausted:
        print(f"exhausted=false (best upper bound {res.min_size})")
    if args.emit:
        _write(args.emit, docs.dumps(docs.oracle_document(res)))
    return EXIT_OK


def cmd_bench(args) -> int:
    kind = args.family
    try:
        if kind == bench.SUCCESSOR:
            fam = bench.Family.successor(args.p_from, args.p_to)
        elif kind == bench.COPRIME_RANDOM:
            fam = bench.Family.coprime(args.n, args.p_max, args.seed)
        else:
            fam = bench.Family.ratio_band(args.epsilon, args.n, args.seed, args.p_max)
        records = bench.run_family(fam, args.oracle_cap, args.oracle_budget_ms, args.timings)
    except ValueError as e:
        raise _UsageError(str(e)) from None
    text = bench.emit_csv(records, args.timings)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_render(args) -> int:
    try:
        pair = docs.read_pair(_read(args.path))
    except docs.DocumentError as e:
        print(f"malformed document: {e}", file=sys.stderr)
        return EXIT_USAGE
    svg = render_svg(pair, args.scale)
    if args.out:
        _write(args.out, svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_reduce(args) -> int:
    try:
        red = solver.reduce_srtp(args.a, args.b, args.c, args.d)
    except ValueError as e:
        raise _UsageError(str(e)) from None
    inst = red.instance
    print(f"SIRTP({inst.p}, {inst.q})")
    print(f"x_scale={red.x_scale} y_scale={red.y_scale} transposed={str(red.transposed).lower()}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sirtp",
        description="Strict integral rectangle transformation: turn p x q into q x p "
        "with matching modules and no rotation.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve SIRTP(p, q) and print the solution size")
    s.add_argument("p", type=_positive_int)
    s.add_argument("q", type=_positive_int)
    s.add_argument("--algorithm", choices=ALGORITHMS, default="algsirtp")
    s.add_argument("--emit", metavar="PATH", help="write the solution pair as JSON")
    s.add_argument("--svg", metavar="PATH", help="write an SVG drawing of the solution")
    s.add_argument("--trace", action="store_true", help="print the recursion rounds")
    s.add_argument("--scale", type=float, default=16, help="SVG pixels per unit (default 16)")
    s.add_argument("--max-modules", type=_positive_int, default=solver.DEFAULT_MAX_MODULES,
                   help="refuse to build geometry with more modules than this")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a pair document (tiling and isomorphism)")
    v.add_argument("path")
    v.add_argument("--mode", choices=[m.value for m in Mode], default="strict")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exhaustive integer-grid minimum for small instances")
    o.add_argument("p", type=_positive_int)
    o.add_argument("q", type=_positive_int)
    o.add_argument("--max-area", type=_positive_int, default=oracle.DEFAULT_MAX_AREA)
    o.add_argument("--budget-ms", type=_positive_int, default=None)
    o.add_argument("--emit", metavar="PATH", help="write the result and witness as JSON")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bench", help="compare bounds and solvers over an instance family, as CSV")
    b.add_argument("--family", choices=[bench.SUCCESSOR, bench.COPRIME_RANDOM, bench.RATIO_BAND],
                   required=True)
    b.add_argument("--from", dest="p_from", type=_positive_int, default=2)
    b.add_argument("--to", dest="p_to", type=_positive_int, default=20)
    b.add_argument("--n", type=_nonneg_int, default=10)
    b.add_argument("--p-max", type=_positive_int, default=1000)
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--epsilon", type=float, default=0.5)
    b.add_argument("--oracle-cap", type=_nonneg_int, default=bench.DEFAULT_ORACLE_CAP,
                   help="run the oracle where p*q is at most this (0 disables)")
    b.add_argument("--oracle-budget-ms", type=_positive_int, default=None)
    b.add_argument("--timings", action="store_true",
                   help="append wall-time columns (output is then not reproducible)")
    b.add_argument("--out", metavar="PATH")
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("render", help="draw a pair document as SVG")
    r.add_argument("path")
    r.add_argument("--out", metavar="PATH")
    r.add_argument("--scale", type=float, default=16)
    r.set_defaults(func=cmd_render)

    d = sub.add_parser(
        "reduce",
        help="reduce SRTP(a, b, c, d) with rational sides to a coprime SIRTP(p, q)",
        description="Rational inputs always reduce to integers. When the side ratio is "
        "irrational, no strict solution of finite size exists, so irrational inputs are "
        "not accepted.",
    )
    for name in "abcd":
        d.add_argument(name, type=_rational)
    d.set_defaults(func=cmd_reduce)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except _UsageError as e:
        print(f"sirtp {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
