"""Command-line interface.

Usage:
    mahler u0 --order 12
    mahler expand-one --order 8
    mahler eval-root --j 1 --m 2
    mahler taylor-root --j 1 --m 3 --order 4
    mahler radial --j 0 --m 0 --order 2 --t-min 4 --t-max 10 --format csv
    mahler flatness --j 1 --m 2 --order 6
    mahler w --a 2 --order 8 --mode closed
    mahler verify --suite exact

Exit codes: 0 success, 1 verification failure, 2 usage/parameter error,
3 resource or budget error.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Sequence

from . import config, output
from .checks import run_suite
from .cyclotomic import DyadicRoot, embed_complex
from .errors import BudgetError, LevelError, ParameterError
from .expansions import (
    coeff_growth_at_one,
    eval_u_at_root,
    infinity_flatness_check,
    radial_residual_check,
    radial_schedule,
    taylor_at_root,
)
from .mahler_functions import (
    MahlerParams,
    a059010_indicator,
    corrected_partial,
    digit_stats,
    mahler_factorial,
    mahler_infinity,
    partial_sum,
    partial_sum_closed_form,
    solve_u0,
    u_minus,
    u_plus,
    w_closed_form,
    w_residual,
    w_solve,
)

log = logging.getLogger("mahler")

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

CSV_HELP = """\
CSV columns of the plot-ready tables (lists inside a cell are ';'-separated):
  radial    t, rho, K, residual, tail_bound, decay_exponent, conclusive, bits, terms, warning
  flatness  t, rho, value, rel_error, ratio_0 .. ratio_K, bits
  growth    k, coeff, ratio, log_ratio, log_ratio_over_log_k

exit codes: 0 ok, 1 verification failure, 2 usage error, 3 budget/level error
environment: MAHLER_MAX_LEVEL (default 10), MAHLER_BITS (default 256)
"""


def _root(args: argparse.Namespace) -> DyadicRoot:
    root = DyadicRoot.of(args.j, args.m)
    if (root.j, root.m) != (args.j, args.m):
        print(f"notice: root ({args.j}, {args.m}) reduced to ({root.j}, {root.m})", file=sys.stderr)
    return root


def _bits(args: argparse.Namespace) -> int:
    return args.bits if args.bits is not None else config.default_bits()


def _coeff_rows(coeffs: Sequence[Any]) -> list[dict[str, Any]]:
    return [{"k": k, "coeff": output.exact_str(c)} for k, c in enumerate(coeffs)]


def cmd_u0(args):
    return {"order": args.order}, _coeff_rows(solve_u0(args.order).coeffs)


def cmd_expand_one(args):
    exp = taylor_at_root(DyadicRoot(0, 0), args.order)
    return {"order": args.order, "method": exp.method}, _coeff_rows(exp.coeffs)


def cmd_eval_root(args):
    root = _root(args)
    val = eval_u_at_root(root)
    bits = _bits(args)
    z = embed_complex(val, bits)
    row = {"j": root.j, "m": root.m, **output.cyclotomic_fields(val), "display": str(val)}
    row.update(re=output.decimal_str(z.real, bits), im=output.decimal_str(z.imag, bits), bits=bits)
    return {"j": root.j, "m": root.m}, [row]


def cmd_taylor_root(args):
    root = _root(args)
    exp = taylor_at_root(root, args.order, method=args.method)
    rows = [{"k": k, **output.cyclotomic_fields(c), "display": str(c)} for k, c in enumerate(exp.coeffs)]
    return {"j": root.j, "m": root.m, "order": args.order, "method": exp.method}, rows


def cmd_radial(args):
    root = _root(args)
    bits = _bits(args)
    rhos = radial_schedule(args.t_min, args.t_max)
    rows = []
    for t, r in zip(range(args.t_min, args.t_max + 1), radial_residual_check(root, args.order, rhos, bits)):
        rows.append(
            {
                "t": t,
                "rho": output.exact_str(r.rho),
                "K": r.K,
                "residual": output.decimal_str(r.residual, 64),
                "tail_bound": output.decimal_str(r.tail_bound, 64),
                "decay_exponent": None if r.decay_exponent is None else output.decimal_str(r.decay_exponent, 64),
                "conclusive": r.conclusive,
                "bits": bits,
                "terms": r.terms,
                "warning": "" if r.conclusive else "inconclusive: error bound not 100x below residual",
            }
        )
    params = {"j": root.j, "m": root.m, "order": args.order, "t_min": args.t_min, "t_max": args.t_max, "bits": bits}
    return params, rows


def cmd_flatness(args):
    root = _root(args)
    bits = _bits(args)
    rhos = radial_schedule(args.t_min, args.t_max)
    rows = []
    for t, r in zip(range(args.t_min, args.t_max + 1), infinity_flatness_check(root, args.order, rhos, bits)):
        row = {
            "t": t,
            "rho": output.exact_str(r.rho),
            "value": output.decimal_str(r.value, 64),
            "rel_error": output.decimal_str(r.rel_error, 64),
        }
        for k, x in enumerate(r.ratios):
            row[f"ratio_{k}"] = output.decimal_str(x, 64)
        row["bits"] = bits
        rows.append(row)
    params = {"j": root.j, "m": root.m, "order": args.order, "t_min": args.t_min, "t_max": args.t_max, "bits": bits}
    return params, rows


def cmd_growth(args):
    rows = []
    for g in coeff_growth_at_one(args.order):
        rows.append(
            {
                "k": g.k,
                "coeff": str(g.coeff),
                "ratio": None if g.ratio is None else output.exact_str(g.ratio),
                "log_ratio": None if g.log_ratio is None else repr(g.log_ratio),
                "log_ratio_over_log_k": None if g.log_ratio_over_log_k is None else repr(g.log_ratio_over_log_k),
            }
        )
    return {"order": args.order}, rows


def cmd_w(args):
    p = MahlerParams.parse(args.a)
    p.require_not_one()
    params = {"a": output.exact_str(p.a), "order": args.order, "mode": args.mode}
    if args.mode == "solve":
        return params, _coeff_rows(w_solve(p, args.order).coeffs)
    if args.mode == "closed":
        return params, _coeff_rows(w_closed_form(p, args.order).coeffs)
    solved = w_solve(p, args.order)
    row = {
        "solve_equals_closed": solved == w_closed_form(p, args.order),
        "residual_zero": w_residual(solved, p).is_zero(),
    }
    if p.a == -1:
        row["equals_u0"] = solved == solve_u0(args.order)
    return params, [row]


def cmd_factorial(args):
    return {"n": args.n}, _coeff_rows(mahler_factorial(args.n).coeffs)


def cmd_partial_sum(args):
    f = partial_sum_closed_form if args.closed else partial_sum
    return {"N": args.N, "closed": args.closed}, _coeff_rows(f(args.N).coeffs)


def cmd_corrected(args):
    return {"N": args.N}, _coeff_rows(corrected_partial(args.N).coeffs)


def cmd_split(args):
    n = args.order
    cols = {"u0": solve_u0(n), "u_plus": u_plus(n), "u_minus": u_minus(n), "q_inf": mahler_infinity(n)}
    rows = [{"k": k, **{name: output.exact_str(s[k]) for name, s in cols.items()}} for k in range(n)]
    return {"order": n}, rows


def cmd_digits(args):
    rows = []
    for m in range(args.start, args.stop):
        d = digit_stats(m)
        row = {"m": m, "r2": d.r2, "s2": d.s2, "z": d.z}
        row["a059010"] = a059010_indicator(m) if m >= 1 else None
        rows.append(row)
    return {"start": args.start, "stop": args.stop}, rows


def cmd_verify(args):
    results = run_suite(args.suite)
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark} {r.name}{(': ' + r.detail) if r.detail and not r.passed else ''}", file=sys.stderr)
    rows = [{"check": r.name, "passed": r.passed, "detail": r.detail} for r in results]
    return {"suite": args.suite}, rows


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")

    root_args = argparse.ArgumentParser(add_help=False)
    root_args.add_argument("--j", type=int, required=True, help="numerator of the angle j/2^m")
    root_args.add_argument("--m", type=_nonneg, required=True, help="level m")

    radial_args = argparse.ArgumentParser(add_help=False)
    radial_args.add_argument("--order", type=_nonneg, default=0, help="Taylor order K")
    radial_args.add_argument("--t-min", type=_positive, default=6)
    radial_args.add_argument("--t-max", type=_positive, default=12)
    radial_args.add_argument("--bits", type=int, default=None, help="precision (default MAHLER_BITS or 256)")

    parser = argparse.ArgumentParser(
        prog="mahler",
        description="Exact and numerical tools for U(q) = 1 + (q - 1) U(q^2).",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("u0", parents=[common], help="coefficients of the power-series solution U0")
    p.add_argument("--order", type=_positive, required=True)
    p.set_defaults(func=cmd_u0)

    p = sub.add_parser("expand-one", parents=[common], help="coefficients of U in powers of (q - 1)")
    p.add_argument("--order", type=_nonneg, required=True, help="highest power K")
    p.set_defaults(func=cmd_expand_one)

    p = sub.add_parser("eval-root", parents=[common, root_args], help="exact U(xi)")
    p.add_argument("--bits", type=int, default=None)
    p.set_defaults(func=cmd_eval_root)

    p = sub.add_parser("taylor-root", parents=[common, root_args], help="exact Taylor coefficients of U at xi")
    p.add_argument("--order", type=_nonneg, required=True)
    p.add_argument("--method", choices=("auto", "shift", "local"), default="auto")
    p.set_defaults(func=cmd_taylor_root)

    p = sub.add_parser("radial", parents=[common, root_args, radial_args], help="radial residual table")
    p.set_defaults(func=cmd_radial)

    p = sub.add_parser("flatness", parents=[common, root_args, radial_args], help="|{rho xi}_oo| / (1-rho)^k table")
    p.set_defaults(func=cmd_flatness)

    p = sub.add_parser("growth", parents=[common], help="growth diagnostics of the (q - 1) coefficients")
    p.add_argument("--order", type=_positive, required=True)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("w", parents=[common], help="W0(q; a) for W(q) = 1 + a(1 - q) W(q^2)")
    p.add_argument("--a", required=True, help="rational parameter p/q, a != 1")
    p.add_argument("--order", type=_positive, default=16)
    p.add_argument("--mode", choices=("solve", "closed", "compare"), default="solve")
    p.set_defaults(func=cmd_w)

    p = sub.add_parser("factorial", parents=[common], help="coefficients of {q}_n")
    p.add_argument("--n", type=_nonneg, required=True)
    p.set_defaults(func=cmd_factorial)

    p = sub.add_parser("partial-sum", parents=[common], help="coefficients of U(q; N)")
    p.add_argument("--N", type=_nonneg, required=True)
    p.add_argument("--closed", action="store_true", help="use the even/odd closed form")
    p.set_defaults(func=cmd_partial_sum)

    p = sub.add_parser("corrected", parents=[common], help="coefficients of U~(q; N)")
    p.add_argument("--N", type=_nonneg, required=True)
    p.set_defaults(func=cmd_corrected)

    p = sub.add_parser("split", parents=[common], help="U0, U+, U- and {q}_oo side by side")
    p.add_argument("--order", type=_positive, required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("digits", parents=[common], help="r2, s2, z and the A059010 indicator")
    p.add_argument("--start", type=_nonneg, default=0)
    p.add_argument("--stop", type=_nonneg, default=21)
    p.set_defaults(func=cmd_digits)

    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.add_argument("--suite", choices=("all", "exact", "radial"), default="all")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, stream=sys.stderr)
    try:
        params, rows = args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetError, LevelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    output.write(output.envelope(args.command, params, rows), args.format, sys.stdout)
    if args.command == "verify" and not all(r["passed"] for r in rows):
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
