"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bounds import (
    classify_point,
    conditional_entropy_max,
    curve_samples,
    extended_upper_inverse,
    fano_lower_bound,
    general_upper_bound,
    kovalevskij_upper_bound,
    analytical_upper,
    mirrored_analytical_lower,
)
from .types import CurveKind, DiagramPoint, DomainError, ErrorKind, make_priors
from .verifier import (
    SamplerConfig,
    brute_force_max_h,
    brute_force_min_h,
    certify_bounds,
    derivative_check,
    tightness_report,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

FIGURE_CURVES = {
    "fig1": (
        CurveKind.FANO_LOWER,
        CurveKind.KOVALEVSKIJ_UPPER,
        CurveKind.ANALYTICAL_UPPER,
        CurveKind.BAYES_ERROR_CAP,
    ),
    "fig2": (
        CurveKind.FANO_LOWER,
        CurveKind.GENERAL_UPPER,
        CurveKind.ANALYTICAL_UPPER,
        CurveKind.MIRRORED_ANALYTICAL,
        CurveKind.ENTROPY_CAP,
    ),
}
CSV_HEADER = ("curve_kind", "h_bits", "error_probability")


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _emit(lines: Sequence[str], out=None) -> None:
    out = out or sys.stdout
    for line in lines:
        out.write(line + "\n")


def _p_min(value: Optional[float]) -> Optional[float]:
    if value is not None and not 0.0 < value <= 0.5:
        raise UsageError(f"--pmin must lie in (0, 0.5], got {value}")
    return value


def _positive(name: str, value: int, minimum: int = 1) -> int:
    if value < minimum:
        raise UsageError(f"{name} must be at least {minimum}, got {value}")
    return value


def bounds_lines(h: float, p_min: Optional[float], m: int) -> list[str]:
    if m < 2:
        raise UsageError(f"--m must be at least 2, got {m}")
    if not 0.0 <= h <= math.log2(m) + 1e-12:
        raise UsageError(f"--h must lie in [0, log2(m)] = [0, {math.log2(m):.12g}]")
    if p_min is not None and m != 2:
        raise UsageError("--pmin applies to binary problems only (--m 2)")
    lines = [
        f"h_bits: {_fmt(h)}",
        f"m: {m}",
        f"fano_lower: {_fmt(fano_lower_bound(h, m))}",
        f"kovalevskij_upper: {_fmt(kovalevskij_upper_bound(h, m))}",
    ]
    if m == 2:
        lines.append(f"general_upper: {_fmt(general_upper_bound(h))}")
    if p_min is not None:
        analytic = analytical_upper(h, p_min) if h <= 2 * p_min else p_min
        h_end = extended_upper_inverse(0.5, p_min)
        mirrored = mirrored_analytical_lower(h, p_min) if h <= h_end else 0.5
        cap = conditional_entropy_max(p_min)
        lines += [
            f"p_min: {_fmt(p_min)}",
            f"analytical_upper: {_fmt(min(p_min, analytic))}",
            f"bayes_error_cap: {_fmt(p_min)}",
            f"mirrored_analytical_lower: {_fmt(mirrored)}",
            f"entropy_cap: {_fmt(cap)}",
            f"admissible_entropy: {'yes' if h <= cap + 1e-12 else 'no'}",
        ]
    return lines


def write_curves(figure: str, p_min: float, n: int, out: Path) -> int:
    rows = []
    for kind in FIGURE_CURVES[figure]:
        curve = curve_samples(kind, p_min if kind.needs_p_min else None, n, extended=figure == "fig2")
        rows += [(kind.value, _fmt(pt.h), _fmt(pt.e)) for pt in curve.points]
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(rows)
    return len(rows)


def read_curves(path: Path) -> list[tuple[CurveKind, float, float]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_HEADER:
            raise ValueError(f"unexpected header {header}")
        return [(CurveKind(k), float(h), float(e)) for k, h, e in reader]


def _cmd_bounds(args) -> int:
    _emit(bounds_lines(args.h, _p_min(args.pmin), args.m))
    return EXIT_OK


def _cmd_curves(args) -> int:
    p_min = _p_min(args.pmin)
    if p_min is None:
        raise UsageError("--pmin is required")
    _positive("--n", args.n, 2)
    try:
        count = write_curves(args.figure, p_min, args.n, Path(args.out))
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    _emit([f"figure: {args.figure}", f"rows: {count}", f"out: {args.out}"])
    return EXIT_OK


def _cmd_classify(args) -> int:
    priors = make_priors(args.p1) if args.p1 is not None else None
    kind = ErrorKind(args.kind)
    if kind is ErrorKind.BAYES and priors is None:
        raise UsageError("--kind bayes needs --p1")
    member = classify_point(DiagramPoint(args.h, args.e, kind), priors)
    lines = [
        f"verdict: {member.verdict.value}",
        f"binding: {','.join(sorted(k.value for k in member.binding)) or '-'}",
        f"slack: {_fmt(member.slack)}",
    ]
    lines += [f"slack_{k.value}: {_fmt(v)}" for k, v in member.slacks.items()]
    _emit(lines)
    return EXIT_OK


def _cmd_verify(args) -> int:
    _positive("--samples", args.samples)
    _positive("--workers", args.workers)
    if not args.tolerance > 0:
        raise UsageError("--tolerance must be positive")
    priors = make_priors(args.p1) if args.p1 is not None else None
    cfg = SamplerConfig(args.seed, args.samples, priors, args.tolerance)
    report = certify_bounds(cfg, workers=args.workers)
    deriv = derivative_check(args.grid)
    _emit(["[certify]", *report.as_lines(), "[derivative]", *deriv.as_lines()])
    return EXIT_OK if report.violations == 0 and deriv.violations == 0 else EXIT_FAILED


def _cmd_oracle(args) -> int:
    if args.p1 is None:
        raise UsageError("--p1 is required")
    _positive("--grid", args.grid, 100)
    priors = make_priors(args.p1)
    lines = []
    if args.e <= priors.p_min:
        lo = brute_force_min_h(priors, args.e, args.grid)
        lines += [
            f"min_h: {_fmt(lo.extremal_h)}",
            f"min_h_argmin_e2: {_fmt(lo.arg_e2)}",
            f"min_h_closed_form: {_fmt(lo.closed_form_h)}",
            f"min_h_gap: {_fmt(lo.abs_gap)}",
        ]
    hi = brute_force_max_h(priors, args.e, args.grid)
    lines += [
        f"max_h: {_fmt(hi.extremal_h)}",
        f"max_h_argmax_e2: {_fmt(hi.arg_e2)}",
        f"max_h_closed_form: {_fmt(hi.closed_form_h)}",
        f"max_h_gap: {_fmt(hi.abs_gap)}",
    ]
    _emit(lines)
    return EXIT_OK


def _cmd_tightness(args) -> int:
    p_min = _p_min(args.pmin)
    if p_min is None:
        raise UsageError("--pmin is required")
    report = tightness_report(p_min, _positive("--n", args.n))
    _emit(report.as_lines())
    return EXIT_OK if report.violations == 0 else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entropy-bounds",
        description="Bounds between conditional entropy and error probability for binary classifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="evaluate every bound at one entropy value")
    p.add_argument("--h", type=float, required=True, help="conditional entropy in bits")
    p.add_argument("--pmin", type=float, help="minimum class prior, enables analytical bounds")
    p.add_argument("--m", type=int, default=2, help="number of classes (default 2)")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("curves", help="write figure curve data as CSV")
    p.add_argument("--figure", choices=sorted(FIGURE_CURVES), required=True)
    p.add_argument("--pmin", type=float, required=True)
    p.add_argument("--n", type=int, default=256, help="samples per curve")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_curves)

    p = sub.add_parser("classify", help="locate a point against the admissible area")
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--e", type=float, required=True, help="error probability")
    p.add_argument("--p1", type=float, help="prior of class 1")
    p.add_argument("--kind", choices=[k.value for k in ErrorKind], default="nonbayes")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("verify", help="Monte Carlo certification of the bounds")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--p1", type=float, help="fix the priors instead of drawing them")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--grid", type=int, default=10, help="derivative check grid per axis")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="brute-force entropy extremes at fixed error")
    p.add_argument("--p1", type=float, required=True)
    p.add_argument("--e", type=float, required=True)
    p.add_argument("--grid", type=int, default=10_000)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("report-tightness", help="analytical bound against h/2")
    p.add_argument("--pmin", type=float, required=True)
    p.add_argument("--n", type=int, default=400, help="interior grid size")
    p.set_defaults(func=_cmd_tightness)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
