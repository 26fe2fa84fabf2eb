"""Command line driver: ``calc``, ``dim-growth`` and ``verify``."""

from __future__ import annotations

import argparse
import json
import sys

from .field import FieldError, make_field
from .filtration import (
    BudgetExceeded,
    FractionSpace,
    build_report,
    cyclic_filtration_dims,
    degree_filtration_dims,
    holonomy_constant,
    mf_filtration_dims,
)
from .grammar import ParseError, parse_fraction, parse_operator, parse_polynomial
from .localize import LocalizedContext, frac_apply
from .poly import AmbientMismatch
from .suites import SUITES, run_suite
from .weyl import op_apply


def _common(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, default=1, help="number of variables")
    p.add_argument("--char", type=int, default=0, help="0 for Q, or a prime p")
    p.add_argument("--f", default=None, help="the polynomial to localize at")
    p.add_argument("--i-max", type=int, default=4, help="highest filtration level")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hasse-dmod", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    calc = sub.add_parser("calc", help="normalize an operator and optionally apply it")
    calc.add_argument("expr")
    calc.add_argument("target", nargs="?", default=None)
    _common(calc)

    dim = sub.add_parser("dim-growth", help="filtration dimensions of R_f")
    _common(dim)

    ver = sub.add_parser("verify", help="run a seeded property suite")
    ver.add_argument("--suite", choices=SUITES + ("all",), default="all")
    ver.add_argument("--cases", type=int, default=100)
    ver.add_argument("--corrupt-series", action="store_true", help=argparse.SUPPRESS)
    _common(ver)
    return parser


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_calc(args) -> int:
    k = make_field(args.char)
    op = parse_operator(args.expr, args.n, k)
    lines = [str(op)]
    if args.target is not None:
        if args.f is not None:
            ctx = LocalizedContext(parse_polynomial(args.f, args.n, k))
            lines.append(str(frac_apply(op, parse_fraction(args.target, ctx))))
        else:
            lines.append(str(op_apply(op, parse_polynomial(args.target, args.n, k))))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def dim_growth_report(n: int, char: int, f_text: str, i_max: int, seed: int = 0):
    """The report behind ``dim-growth``: F_i (1/f) plus the M'_i filtration of R_f."""
    k = make_field(char)
    ctx = LocalizedContext(parse_polynomial(f_text, n, k))
    z = ctx.fraction(1, 1)
    series = cyclic_filtration_dims(z, FractionSpace(ctx, 1 + i_max), i_max, generator="1/f^1")
    report = build_report(series, 0)
    mf = mf_filtration_dims(ctx, i_max)
    base = degree_filtration_dims(n, k, max(1, i_max) * (ctx.d + 1))
    c_mf = holonomy_constant(mf) if i_max >= 1 else None
    c_r = holonomy_constant(base)
    scaled = c_r * (ctx.d + 1) ** n
    report.extra = {
        "config": {"n": n, "char": char, "f": f_text, "i_max": i_max, "seed": seed},
        "mf_filtration": {
            "dims": list(mf.dims),
            "holonomy_constant": None if c_mf is None else str(c_mf),
            "degree_filtration_constant": str(c_r),
            "scaled_bound": str(scaled),
            "within_scaled_bound": c_mf is None or c_mf <= scaled,
        },
    }
    return report


def cmd_dim_growth(args) -> int:
    if args.f is None:
        raise ValueError("dim-growth needs --f")
    report = dim_growth_report(args.n, args.char, args.f, args.i_max, args.seed)
    _emit(report.to_json() if args.format == "json" else report.to_csv(), args.out)
    ok = report.passed and report.extra["mf_filtration"]["within_scaled_bound"]
    if not ok:
        bad = [c.i for c in report.checks if not c.passed]
        print(f"lower bound fails at level(s) {bad}", file=sys.stderr)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    k = make_field(args.char)
    names = SUITES if args.suite == "all" else (args.suite,)
    results = []
    for name in names:
        for r in run_suite(name, k, args.seed, args.n, args.cases, corrupt=args.corrupt_series):
            results.append((name, r))
    ok = all(r.passed for _, r in results)
    if args.format == "json":
        payload = {
            "config": {"n": args.n, "char": args.char, "seed": args.seed, "cases": args.cases},
            "checks": [
                {"suite": s, "name": r.name, "cases": r.cases, "failures": r.failures} for s, r in results
            ],
            "passed": ok,
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = "".join(f"[{s}] {r.line()}\n" for s, r in results)
        text += f"{'PASS' if ok else 'FAIL'}: {sum(r.passed for _, r in results)}/{len(results)} checks\n"
    _emit(text, args.out)
    return 0 if ok else 1


COMMANDS = {"calc": cmd_calc, "dim-growth": cmd_dim_growth, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.n < 1:
        print("error: --n must be at least 1", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
    except (FieldError, AmbientMismatch, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
