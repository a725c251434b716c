"""Command-line interface.

Four subcommands:

``coeffs``
    Print expansion coefficients, symbolic or specialized, as text, JSON,
    CSV, or LaTeX.
``verify``
    Run the exact theorem checks and report one line per check; exits
    nonzero if any check fails.
``errata``
    Print the corrections to the published reference tables.
``approx``
    Evaluate the truncated expansions numerically against high-precision
    reference values, optionally sweeping the sample size to estimate the
    empirical convergence order.

All data output goes to stdout and is byte-deterministic for fixed
arguments; diagnostics go to stderr. Exit codes: 0 success, 1 failed
verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import BiPoly, Poly, json_canonical, parse_rational
from .expansions import (
    COMPOSITION_ORDER_CAP,
    g_via_bernoulli,
    s_coeffs,
    specialize,
)
from .identities import (
    CheckReport,
    bernoulli_identity,
    check_coefficient_table,
    check_degree_collapse,
    check_derivative_relation,
    check_even_p_vanishing,
    check_half_argument,
    check_reflection,
    check_route_agreement,
    check_shift_identity,
    errata_markdown,
    errata_report,
    errata_text,
)
from .numeric import (
    ApproxResult,
    approx_exp_psi,
    approx_gamma,
    approx_harmonic,
    convergence_order,
    error_table_csv,
    format_mpf,
)

__all__ = ["main", "run"]


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


# ---------------------------------------------------------------------------
# LaTeX rendering


def _latex_coeff(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value)
    sign = "-" if value < 0 else ""
    return f"{sign}\\frac{{{abs(value.numerator)}}}{{{value.denominator}}}"


def _latex_terms(terms: list[tuple[Fraction, str]]) -> str:
    if not terms:
        return "0"
    parts: list[str] = []
    for coeff, body in terms:
        mag = _latex_coeff(abs(coeff))
        if body:
            piece = body if abs(coeff) == 1 else f"{mag} {body}"
        else:
            piece = mag
        if not parts:
            parts.append(f"-{piece}" if coeff < 0 else piece)
        else:
            parts.append(f"- {piece}" if coeff < 0 else f"+ {piece}")
    return " ".join(parts)


def _latex_power(var: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    return f"{var}^{{{k}}}"


def _latex_poly(poly: Poly, var: str) -> str:
    terms = []
    deg = poly.degree
    if deg is None:
        return "0"
    for k in range(deg, -1, -1):
        if poly[k] != 0:
            terms.append((poly[k], _latex_power(var, k)))
    return _latex_terms(terms)


def _latex_bipoly(value: BiPoly) -> str:
    terms = []
    for i, j, coeff in value.sorted_terms():
        body = " ".join(x for x in (_latex_power("p", i), _latex_power("t", j)) if x)
        terms.append((coeff, body))
    return _latex_terms(terms)


def _latex_value(value) -> str:
    if isinstance(value, Fraction):
        return _latex_coeff(value)
    if isinstance(value, Poly):
        return _latex_poly(value, "t")
    return _latex_bipoly(value)


# ---------------------------------------------------------------------------
# coeffs subcommand


def _coeff_json(value) -> dict:
    if isinstance(value, Fraction):
        return {"value": str(value)}
    if isinstance(value, Poly):
        value = BiPoly.from_poly_in_t(value)
    return {"poly": value.to_json_dict()}


def _cmd_coeffs(args: argparse.Namespace, out) -> int:
    n_max = args.n
    if args.kind == "s":
        if args.p is not None:
            raise SystemExit2("--p applies only to the exponential family g")
        polys = s_coeffs(n_max)
        if args.t is not None:
            values = [polys[n].eval(args.t) for n in range(n_max + 1)]
        else:
            values = list(polys[: n_max + 1])
        label = "S"
    else:
        g = g_via_bernoulli(n_max)
        if args.p is not None and args.t is not None:
            values = list(specialize(g, args.p, args.t).coeffs)
        else:
            values = []
            for n in range(n_max + 1):
                v = g[n]
                if args.p is not None:
                    v = v.eval_p(args.p)
                    v = v.as_poly_in_t()
                elif args.t is not None:
                    v = v.eval_t(args.t)
                    v = v.as_poly_in_p()
                values.append(v)
        label = "G"

    var = "p" if (args.kind == "g" and args.t is not None and args.p is None) else "t"

    if args.format == "text":
        for n, v in enumerate(values):
            if isinstance(v, Fraction):
                body = str(v)
            elif isinstance(v, Poly):
                body = v.to_text(var)
            else:
                body = v.to_text()
            print(f"{label}_{n} = {body}", file=out)
    elif args.format == "latex":
        print("\\begin{align*}", file=out)
        for n, v in enumerate(values):
            tail = ",\\\\" if n < len(values) - 1 else ""
            print(f"{label}_{{{n}}} &= {_latex_value(v)}{tail}", file=out)
        print("\\end{align*}", file=out)
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        if all(isinstance(v, Fraction) for v in values):
            writer.writerow(["n", "value"])
            for n, v in enumerate(values):
                writer.writerow([n, str(v)])
        else:
            writer.writerow(["n", "p_pow", "t_pow", "num", "den"])
            for n, v in enumerate(values):
                if isinstance(v, Poly):
                    v = (
                        BiPoly.from_poly_in_p(v)
                        if var == "p"
                        else BiPoly.from_poly_in_t(v)
                    )
                for i, j, coeff in v.sorted_terms():
                    writer.writerow([n, i, j, coeff.numerator, coeff.denominator])
    else:
        doc = {
            "kind": args.kind,
            "order_max": n_max,
            "p": None if args.p is None else str(args.p),
            "t": None if args.t is None else str(args.t),
            "coeffs": [dict(n=n, **_coeff_json(v)) for n, v in enumerate(values)],
        }
        print(json_canonical(doc), file=out)
    return 0


# ---------------------------------------------------------------------------
# verify subcommand


def _suite_checks(suite: str, n_max: int) -> list[CheckReport]:
    checks: list[CheckReport] = []

    def identity_reports() -> list[CheckReport]:
        out = []
        top = min(6, (COMPOSITION_ORDER_CAP - 1) // 2)
        for n in range(1, top + 1):
            residual = bernoulli_identity(n)
            if residual.is_zero:
                out.append(CheckReport.passed("bernoulli-product-identity", n=n))
            else:
                out.append(
                    CheckReport.failed(
                        "bernoulli-product-identity",
                        BiPoly.from_poly_in_t(residual),
                        n=n,
                    )
                )
        return out

    if suite in ("all", "even-p"):
        for p in range(2, max(n_max, 2) + 1, 2):
            checks.append(check_even_p_vanishing(p))
    if suite in ("all", "degrees"):
        for p in range(1, min(6, n_max) + 1):
            checks.append(check_degree_collapse(p, p + 6))
    if suite in ("all", "reflection"):
        checks.append(check_reflection(n_max))
    if suite in ("all", "half"):
        checks.append(check_half_argument(n_max))
    if suite in ("all", "identity"):
        checks.extend(identity_reports())
    if suite in ("all", "routes"):
        checks.append(check_route_agreement(min(n_max, COMPOSITION_ORDER_CAP)))
    if suite == "all":
        checks.append(check_shift_identity(min(n_max, 10)))
        checks.append(check_derivative_relation(n_max))
        checks.append(check_coefficient_table(n_max))
    return checks


def _cmd_verify(args: argparse.Namespace, out) -> int:
    checks = _suite_checks(args.suite, args.max_n)
    failures = sum(1 for c in checks if not c.ok)
    if args.format == "json":
        doc = {
            "suite": args.suite,
            "max_n": args.max_n,
            "failures": failures,
            "checks": [c.to_json_dict() for c in checks],
        }
        print(json_canonical(doc), file=out)
    else:
        for c in checks:
            params = " ".join(f"{k}={v}" for k, v in sorted(c.parameters.items()))
            line = f"{'PASS' if c.ok else 'FAIL'} {c.check_name}"
            if params:
                line += f" [{params}]"
            if c.witness is not None:
                line += f" residual: {c.witness.to_text()}"
            print(line, file=out)
        print(f"{len(checks) - failures}/{len(checks)} checks passed", file=out)
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# errata subcommand


def _errata_latex(entries) -> str:
    def esc(text: str) -> str:
        for ch in "\\&%$#_{}^~":
            text = text.replace(ch, f"\\{ch}" if ch != "\\" else "\\textbackslash{}")
        return text

    lines = [
        "\\begin{tabular}{p{0.24\\linewidth}p{0.3\\linewidth}p{0.3\\linewidth}}",
        "\\hline",
        "location & printed & corrected \\\\",
        "\\hline",
    ]
    for e in entries:
        lines.append(
            f"{esc(e.location)} & \\texttt{{{esc(e.printed)}}} & "
            f"\\texttt{{{esc(e.computed)}}} \\\\"
        )
    lines.append("\\hline")
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def _cmd_errata(args: argparse.Namespace, out) -> int:
    entries = errata_report()
    if args.format == "json":
        print(
            json_canonical({"entries": [e.to_json_dict() for e in entries]}),
            file=out,
        )
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["location", "printed", "computed", "note"])
        for e in entries:
            writer.writerow([e.location, e.printed, e.computed, e.note])
    elif args.format == "markdown":
        out.write(errata_markdown(entries))
    elif args.format == "latex":
        out.write(_errata_latex(entries))
    else:
        out.write(errata_text(entries))
    return 0


# ---------------------------------------------------------------------------
# approx subcommand


def _one_sample(args: argparse.Namespace, n: int) -> ApproxResult:
    if args.target == "gamma":
        return approx_gamma(n, args.order, t=args.t, prec=args.prec)
    if args.target == "harmonic":
        return approx_harmonic(n, args.order, t=args.t, prec=args.prec)
    return approx_exp_psi(n, args.order, p=args.p, t=args.t, prec=args.prec)


def _cmd_approx(args: argparse.Namespace, out) -> int:
    ns = [args.n * (2**k) for k in range(4)] if args.sweep else [args.n]
    samples = [_one_sample(args, n) for n in ns]
    fitted: Optional[Fraction] = None
    if args.sweep:
        enriched = []
        for i, r in enumerate(samples):
            est = None
            if i > 0:
                try:
                    est = convergence_order(
                        [
                            (samples[i - 1].n, samples[i - 1].abs_error),
                            (r.n, r.abs_error),
                        ]
                    )
                except ValueError:
                    est = None
            enriched.append(
                ApproxResult(r.n, r.order_used, r.value, r.abs_error, est)
            )
        samples = enriched
        try:
            fitted = convergence_order([(r.n, r.abs_error) for r in samples])
        except ValueError:
            fitted = None

    if args.format == "json":
        doc = {
            "target": args.target,
            "prec": args.prec,
            "t": str(args.t),
            "p": str(args.p) if args.target == "exp-psi" else None,
            "samples": [
                {
                    "n": r.n,
                    "order": r.order_used,
                    "value": format_mpf(r.value, args.prec),
                    "abs_error": format_mpf(r.abs_error, args.prec),
                    "est_order": None if r.est_order is None else str(r.est_order),
                }
                for r in samples
            ],
            "fitted_order": None if fitted is None else str(fitted),
        }
        print(json_canonical(doc), file=out)
    elif args.format == "csv":
        out.write(error_table_csv(samples, args.prec))
        if fitted is not None:
            print(f"# fitted_order,{fitted}", file=out)
    else:
        for r in samples:
            line = (
                f"n={r.n} order={r.order_used} value={format_mpf(r.value, args.prec)}"
                f" abs_error={format_mpf(r.abs_error, args.prec)}"
            )
            if r.est_order is not None:
                line += f" est_order={float(r.est_order):.3f}"
            print(line, file=out)
        if args.sweep:
            if fitted is not None:
                print(f"fitted order: {float(fitted):.3f}", file=out)
            else:
                print("fitted order: n/a", file=out)
    return 0


# ---------------------------------------------------------------------------


class SystemExit2(Exception):
    """Usage error surfaced with exit code 2."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exppsi",
        description=(
            "Exact coefficient polynomials, theorem verification, and "
            "high-precision evaluation for asymptotic digamma expansions."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", help="print expansion coefficients")
    c.add_argument("kind", choices=["s", "g"], help="series family")
    c.add_argument("--n", type=_nonnegative_int, required=True, metavar="N",
                   help="highest order to print")
    c.add_argument("--p", type=_rational, default=None, metavar="RAT",
                   help="specialize the exponent (g only)")
    c.add_argument("--t", type=_rational, default=None, metavar="RAT",
                   help="specialize the shift")
    c.add_argument("--format", choices=["text", "json", "csv", "latex"],
                   default="text")
    c.set_defaults(func=_cmd_coeffs)

    v = sub.add_parser("verify", help="run the exact theorem checks")
    v.add_argument(
        "--suite",
        choices=["all", "even-p", "degrees", "reflection", "half", "identity", "routes"],
        default="all",
    )
    v.add_argument("--max-n", type=_positive_int, default=12, metavar="N")
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.set_defaults(func=_cmd_verify)

    e = sub.add_parser("errata", help="print reference-table corrections")
    e.add_argument(
        "--format",
        choices=["text", "json", "csv", "latex", "markdown"],
        default="text",
    )
    e.set_defaults(func=_cmd_errata)

    a = sub.add_parser("approx", help="numerically evaluate the expansions")
    a.add_argument("target", choices=["gamma", "harmonic", "exp-psi"])
    a.add_argument("--n", type=_positive_int, required=True, metavar="N")
    a.add_argument("--order", type=_nonnegative_int, default=4, metavar="K")
    a.add_argument("--t", type=_rational, default=Fraction(1), metavar="RAT")
    a.add_argument("--p", type=_rational, default=Fraction(1), metavar="RAT")
    a.add_argument("--prec", type=_positive_int, default=256, metavar="BITS")
    a.add_argument("--sweep", action="store_true",
                   help="sample n, 2n, 4n, 8n and fit the convergence order")
    a.add_argument("--format", choices=["text", "json", "csv"], default="text")
    a.set_defaults(func=_cmd_approx)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
