"""Command-line front end.

Subcommands: weights, kernel, integrate, composite, bounds, verify, demo.
Output formats: text (human-oriented), json, csv (stable column set, see
docs/json-schemas.md).  Exit status 0 on success, 1 on usage errors, 2 on
numerical failures (unconverged reference integral, evaluation domain
error, failed verification).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .exactmath import format_rational, parse_rational
from .expressions import (
    EvalDomainError,
    ParseError,
    derivative_function,
    jet_provider,
    parse,
)
from .kernel import RootIsolationError, kernel_set
from .oracle import ConvergenceError, OracleConfig, reference_integrate
from .quadrature import (
    Partition,
    e2_bound_f3,
    e2_classical_f4,
    integrate_composite,
    integrate_single,
    observed_orders,
    refined_bounds,
    sample_uniform,
)
from .verify import run_checks
from .weights import compute_weights

CSV_COLUMNS = (
    "n",
    "m",
    "h",
    "quadrature",
    "reference",
    "error",
    "observed_order",
    "bound_uniform",
    "bound_l2",
)

_BOUND_SAMPLES = 257


class _UsageError(ValueError):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; the contract here is 1.
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_endpoint(text: str, allow_pi: bool) -> Fraction:
    s = text.strip().lower()
    if s in ("pi", "-pi", "+pi"):
        if not allow_pi:
            raise _UsageError(
                "the symbol 'pi' is only accepted by the float-path subcommands "
                "(integrate, composite, bounds)"
            )
        return Fraction(-math.pi if s == "-pi" else math.pi)
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _parse_panel_counts(text: str) -> list:
    try:
        counts = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise _UsageError(f"--m expects an integer or comma-separated integers, got {text!r}")
    if not counts or any(m < 1 for m in counts):
        raise _UsageError("--m values must be positive integers")
    return counts


def _oracle_config(tol: float) -> OracleConfig:
    if tol <= 0:
        raise _UsageError("--tol must be positive")
    return OracleConfig(abs_tol=tol, rel_tol=tol)


def _emit_csv(rows):
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(["" if row.get(c) is None else row[c] for c in CSV_COLUMNS])


def _fmt(value) -> str:
    if value is None:
        return "-"
    return f"{value:.15g}"


# -- subcommands --------------------------------------------------------


def _cmd_weights(args) -> int:
    a = _parse_endpoint(args.a, allow_pi=False)
    b = _parse_endpoint(args.b, allow_pi=False)
    rule = compute_weights(args.n, a, b)
    if args.format == "json":
        print(json.dumps(rule.to_json_dict(), indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["j", "w_a", "w_b"])
        for j in range(rule.n):
            writer.writerow([j, format_rational(rule.w_a[j]), format_rational(rule.w_b[j])])
    else:
        print(f"order n = {rule.n} on [{format_rational(a)}, {format_rational(b)}]")
        for j in range(rule.n):
            print(
                f"  f^({j}):  w_a = {format_rational(rule.w_a[j]):>16}   "
                f"w_b = {format_rational(rule.w_b[j]):>16}"
            )
    return 0


def _cmd_kernel(args) -> int:
    a = _parse_endpoint(args.a, allow_pi=False)
    b = _parse_endpoint(args.b, allow_pi=False)
    ks = kernel_set(args.n, a, b)
    if args.format == "json":
        print(json.dumps(ks.to_json_dict(), indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["power", "coefficient"])
        for power, coeff in enumerate(ks.kernel.coeffs):
            writer.writerow([power, format_rational(coeff)])
    else:
        print(f"error kernel, order n = {ks.n} on [{format_rational(a)}, {format_rational(b)}]")
        print(f"  K(x) = {ks.kernel}")
        print(f"  c = {format_rational(ks.params.c)}")
        for i, d in enumerate(ks.params.deltas):
            print(f"  delta_{i} = {format_rational(d)}")
        print(f"  integral(K^2) = {format_rational(ks.l2sq())}")
        print(f"  integral(|K|) ~ {ks.abs_integral():.15g}")
    return 0


def _single_row(args, with_bounds: bool):
    a = _parse_endpoint(args.a, allow_pi=True)
    b = _parse_endpoint(args.b, allow_pi=True)
    if a >= b:
        raise _UsageError("endpoints must satisfy a < b")
    expr = parse(args.fn)
    cfg = _oracle_config(args.tol)
    value = float(integrate_single(jet_provider(expr), args.n, a, b))
    reference = reference_integrate(
        lambda x: _eval_expr(expr, x), float(a), float(b), cfg
    )
    if not reference.converged:
        raise ConvergenceError("reference integral did not converge", reference)
    row = {
        "n": args.n,
        "m": 1,
        "h": float(b - a),
        "quadrature": value,
        "reference": reference.value,
        "error": value - reference.value,
        "observed_order": None,
        "bound_uniform": None,
        "bound_l2": None,
    }
    extras = {"reference_err_estimate": reference.err_estimate, "fn": args.fn}
    if with_bounds:
        order = args.bound_order if args.bound_order is not None else args.n
        if order != args.n and not (args.n == 2 and order in (3, 4)):
            raise _UsageError(
                f"--bound-order {order} is not available for n = {args.n}; "
                "use the rule order, or 3/4 when n = 2"
            )
        ks = kernel_set(args.n, a, b)
        if order == args.n:
            uniform, l2, stable = refined_bounds(
                derivative_function(expr, args.n), ks, _BOUND_SAMPLES
            )
            row["bound_uniform"] = uniform
            row["bound_l2"] = l2
            extras["bound_kind"] = "midrange"
            extras["bound_stable"] = stable
        elif order == 3:
            samples = sample_uniform(derivative_function(expr, 3), a, b, _BOUND_SAMPLES)
            pair = e2_bound_f3(samples, ks)
            row["bound_uniform"] = pair.uniform
            row["bound_l2"] = pair.l2
            extras["bound_kind"] = "midrange"
        else:
            extras["error_via_f4"] = e2_classical_f4(
                derivative_function(expr, 4), a, b, cfg
            )
            extras["bound_kind"] = "mean"
        extras["derivative_order_used"] = order
    return row, extras


def _eval_expr(expr, x):
    from .expressions import evaluator

    return evaluator(expr)(x)


def _print_single_text(row, extras):
    print(f"f(x) = {extras['fn']} on an interval of width {_fmt(row['h'])}")
    print(f"  quadrature (n={row['n']})   : {_fmt(row['quadrature'])}")
    print(
        f"  reference             : {_fmt(row['reference'])}"
        f"   (err estimate {extras['reference_err_estimate']:.3g})"
    )
    print(f"  error (quad - ref)    : {_fmt(row['error'])}")
    if row["bound_uniform"] is not None:
        print(f"  bound (uniform)       : {_fmt(row['bound_uniform'])}")
    if row["bound_l2"] is not None:
        print(f"  bound (L2)            : {_fmt(row['bound_l2'])}")
    if "error_via_f4" in extras:
        print(f"  error via f''''       : {_fmt(extras['error_via_f4'])}")


def _cmd_integrate(args) -> int:
    row, extras = _single_row(args, with_bounds=False)
    if args.format == "json":
        doc = dict(row)
        doc.update(extras)
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        _emit_csv([row])
    else:
        _print_single_text(row, extras)
    return 0


def _cmd_bounds(args) -> int:
    row, extras = _single_row(args, with_bounds=True)
    if args.format == "json":
        doc = dict(row)
        doc.update(extras)
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        _emit_csv([row])
    else:
        _print_single_text(row, extras)
        if not extras.get("bound_stable", True):
            print("  note: bound estimates changed by > 1% under grid refinement")
    return 0


def _cmd_composite(args) -> int:
    a = _parse_endpoint(args.a, allow_pi=True)
    b = _parse_endpoint(args.b, allow_pi=True)
    if a >= b:
        raise _UsageError("endpoints must satisfy a < b")
    expr = parse(args.fn)
    cfg = _oracle_config(args.tol)
    counts = _parse_panel_counts(args.m)
    reference = reference_integrate(
        lambda x: _eval_expr(expr, x), float(a), float(b), cfg
    )
    if not reference.converged:
        raise ConvergenceError("reference integral did not converge", reference)
    jets = jet_provider(expr)
    rows = []
    errors = []
    for m in counts:
        value = float(integrate_composite(jets, args.n, Partition.uniform(a, b, m)))
        errors.append(abs(value - reference.value))
        rows.append(
            {
                "n": args.n,
                "m": m,
                "h": float(b - a) / m,
                "quadrature": value,
                "reference": reference.value,
                "error": value - reference.value,
                "observed_order": None,
                "bound_uniform": None,
                "bound_l2": None,
            }
        )
    for row, order in zip(rows, observed_orders(errors)):
        row["observed_order"] = order
    if args.format == "json":
        print(json.dumps({"fn": args.fn, "rows": rows}, indent=2))
    elif args.format == "csv":
        _emit_csv(rows)
    else:
        print(f"composite rule for f(x) = {args.fn}, n = {args.n}")
        print(f"  reference = {_fmt(reference.value)}")
        header = f"  {'m':>6} {'h':>12} {'quadrature':>22} {'error':>14} {'order':>7}"
        print(header)
        for row in rows:
            order = "-" if row["observed_order"] is None else f"{row['observed_order']:.3f}"
            print(
                f"  {row['m']:>6} {row['h']:>12.6g} {row['quadrature']:>22.15g} "
                f"{row['error']:>14.4g} {order:>7}"
            )
    return 0


def _cmd_verify(args) -> int:
    a = _parse_endpoint(args.a, allow_pi=False) if args.a is not None else Fraction(0)
    b = _parse_endpoint(args.b, allow_pi=False) if args.b is not None else Fraction(1)
    checks = run_checks(args.n, a, b)
    width = max(len(c.name) for c in checks)
    failures = 0
    for check in checks:
        status = "ok " if check.passed else "FAIL"
        detail = f"  {check.detail}" if check.detail else ""
        print(f"{status}  {check.name:<{width}}{detail}")
        if not check.passed:
            failures += 1
    print(f"{len(checks) - failures}/{len(checks)} checks passed")
    return 0 if failures == 0 else 2


def _cmd_demo(args) -> int:
    expr = parse("x^2*sin(x)")
    a, b = 0.0, math.pi
    reference = reference_integrate(
        lambda x: _eval_expr(expr, x), a, b, OracleConfig(abs_tol=1e-13, rel_tol=1e-13)
    )
    jets = jet_provider(expr)
    trapezoid = float(integrate_single(jets, 1, a, b))
    hermite = float(integrate_single(jets, 2, a, b))
    print("integral of x^2*sin(x) over [0, pi]")
    print(f"  true value (reference)          : {reference.value:.15g}   = pi^2 - 4")
    print(f"  endpoint values only (n=1)      : {trapezoid:.15g}")
    print(f"  values and slopes (n=2)         : {hermite:.15g}   = pi^4 / 12")
    print(f"  n=2 error (quad - ref)          : {hermite - reference.value:.15g}")
    return 0


# -- argument wiring -----------------------------------------------------


def _add_common(parser, with_fn=False, with_m=False, with_bound_order=False):
    parser.add_argument("--n", type=int, required=True, help="rule order (derivatives per endpoint)")
    parser.add_argument("--a", required=True, help="left endpoint: 'p/q', decimal, or 'pi'")
    parser.add_argument("--b", required=True, help="right endpoint: 'p/q', decimal, or 'pi'")
    if with_fn:
        parser.add_argument("--fn", required=True, help="integrand expression in x")
        parser.add_argument("--tol", type=float, default=1e-10, help="reference integrator tolerance")
    if with_m:
        parser.add_argument("--m", required=True, help="panel count, or comma-separated counts")
    if with_bound_order:
        parser.add_argument(
            "--bound-order",
            type=int,
            default=None,
            help="derivative order feeding the bounds (default: the rule order; 3 or 4 allowed when n = 2)",
        )
    parser.add_argument(
        "--format", choices=("json", "csv", "text"), default="text", help="output format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="hermquad",
        description="Two-point quadrature from endpoint derivatives: exact weights, "
        "error kernels, bounds, and identity checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", help="exact rule weights")
    _add_common(p)
    p.set_defaults(func=_cmd_weights)

    p = sub.add_parser("kernel", help="exact error kernel and its parameters")
    _add_common(p)
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("integrate", help="single-interval quadrature vs reference")
    _add_common(p, with_fn=True)
    p.set_defaults(func=_cmd_integrate)

    p = sub.add_parser("composite", help="composite quadrature error table")
    _add_common(p, with_fn=True, with_m=True)
    p.set_defaults(func=_cmd_composite)

    p = sub.add_parser("bounds", help="error bounds from sampled derivatives")
    _add_common(p, with_fn=True, with_bound_order=True)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("verify", help="exact identity checks for a given order")
    p.add_argument("--n", type=int, required=True, help="rule order")
    p.add_argument("--a", default=None, help="left endpoint (default 0)")
    p.add_argument("--b", default=None, help="right endpoint (default 1)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("demo", help="three-way comparison on x^2*sin(x) over [0, pi]")
    p.set_defaults(func=_cmd_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EvalDomainError, ConvergenceError, RootIsolationError, OverflowError) as exc:
        print(f"hermquad: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (_UsageError, ParseError, ValueError) as exc:
        print(f"hermquad: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
