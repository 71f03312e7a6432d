"""Entropy/error bounds for binary classifiers and admissible-area membership.

The analytical upper bound function maps entropy to error through the
inverse of

    h(e) = -p_min log2(p_min / (e + p_min)) - e log2(e / (e + p_min)),

which is the conditional entropy of the setting that puts all error mass on
the majority class. It is strictly increasing in ``e``, so every inversion
here is a bracketed bisection.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._numerics import increasing_root
from .entropy import EntropyBranch, binary_entropy, binary_entropy_inverse
from .types import (
    CURVE_TOL,
    RANGE_SLACK,
    BoundCurve,
    Bits,
    CurveKind,
    DiagramPoint,
    DomainError,
    ErrorKind,
    Priors,
    Probability,
    bits,
    probability,
)

BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class BoundQuery:
    h: float
    m: int = 2
    priors: Optional[Priors] = None
    error_kind: ErrorKind = ErrorKind.NON_BAYES

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise DomainError(f"class count m={self.m!r} must be an integer >= 2")
        object.__setattr__(self, "h", bits(self.h, upper=math.log2(self.m), name="h"))
        if self.error_kind is ErrorKind.BAYES and self.priors is None:
            raise DomainError("Bayes error analysis needs known priors")


def _check_m(h: float, m: int) -> float:
    if int(m) != m or m < 2:
        raise DomainError(f"class count m={m!r} must be an integer >= 2")
    return bits(h, upper=math.log2(m), name="h")


def _check_p_min(p_min: float) -> float:
    p_min = probability(p_min, "p_min")
    if not 0.0 < p_min <= 0.5:
        raise DomainError(f"p_min={p_min} must lie in (0, 0.5]")
    return p_min


def fano_lower_bound(h: Bits, m: int = 2) -> Probability:
    """Smallest error compatible with conditional entropy ``h`` over ``m`` classes."""
    h = _check_m(h, m)
    if m == 2:
        return binary_entropy_inverse(h, EntropyBranch.LOWER)
    log_m1 = math.log2(m - 1)
    return increasing_root(
        lambda e: binary_entropy(e) + e * log_m1 - h, 0.0, (m - 1) / m
    )


def kovalevskij_upper_bound(h: Bits, m: int = 2) -> Probability:
    """Piecewise-linear upper bound; ``h / 2`` in the binary case.

    Segment ``k`` covers ``log2 k <= h <= log2(k + 1)``. Adjacent segments
    meet at the knots, so which one claims a knot does not change the value.
    """
    h = _check_m(h, m)
    if m == 2:
        return h / 2.0
    k = min(max(math.floor(2.0**h), 1), m - 1)
    slope = k * (k + 1) * math.log2((k + 1) / k)
    return probability((k - 1) / k + (h - math.log2(k)) / slope)


def _upper_curve_h(e: float, p_min: float) -> float:
    # No domain checks: also used past the Bayes corner for non-Bayes errors.
    h = p_min * math.log2((e + p_min) / p_min)
    if e > 0.0:
        # difference of logs: the ratio overflows for subnormal e
        h += e * (math.log2(e + p_min) - math.log2(e))
    return h


def analytical_upper_inverse(e: Probability, p_min: Probability) -> Bits:
    """Entropy at which the analytical upper bound reaches error ``e``."""
    p_min = _check_p_min(p_min)
    e = probability(e, "e")
    if e > p_min + RANGE_SLACK:
        raise DomainError(f"e={e} exceeds p_min={p_min}")
    return bits(_upper_curve_h(min(e, p_min), p_min), upper=1.0)


def extended_upper_inverse(e: Probability, p_min: Probability) -> Bits:
    """The analytical curve continued to ``e <= 0.5`` for non-Bayes errors.

    Past ``e = p_min`` the same setting (all error on the majority class) is
    still feasible and still minimises the conditional entropy, so the curve
    bounds non-Bayes classifiers up to the point ``(h(0.5), 0.5)``.
    """
    p_min = _check_p_min(p_min)
    e = probability(e, "e")
    if e > 0.5 + RANGE_SLACK:
        raise DomainError(f"e={e} exceeds 0.5")
    return bits(_upper_curve_h(min(e, 0.5), p_min), upper=1.0)


def _g2(h: float, p_min: float) -> float:
    corner = 2.0 * p_min
    if h <= corner:
        lo, hi = 0.0, p_min
    else:
        lo, hi = p_min, 0.5
    return increasing_root(lambda e: _upper_curve_h(e, p_min) - h, lo, hi)


def analytical_upper(h: Bits, p_min: Probability) -> Probability:
    """Error at which the analytical curve reaches entropy ``h``.

    Only defined up to the corner ``h = 2 p_min``; the full bound is
    ``min(p_min, analytical_upper(h))`` with ``p_min`` binding past the corner.
    """
    p_min = _check_p_min(p_min)
    h = bits(h, name="h")
    if h > 2.0 * p_min + RANGE_SLACK:
        raise DomainError(f"h={h} is past the corner 2*p_min={2 * p_min}")
    return _g2(min(h, 2.0 * p_min), p_min)


def extended_analytical_upper(h: Bits, p_min: Probability) -> Probability:
    """Inverse of :func:`extended_upper_inverse`, for ``h`` up to its value at 0.5."""
    p_min = _check_p_min(p_min)
    h = bits(h, name="h")
    h_end = _upper_curve_h(0.5, p_min)
    if h > h_end + RANGE_SLACK:
        raise DomainError(f"h={h} is past the end of the analytical curve ({h_end})")
    return _g2(min(h, h_end), p_min)


def bayes_error_cap(p: Priors) -> Probability:
    return p.p_min


def general_upper_bound(h: Bits) -> Probability:
    """Upper bound on any classifier's error: Fano's bound mirrored about 0.5."""
    return 1.0 - fano_lower_bound(h, 2)


def mirrored_analytical_lower(h: Bits, p_min: Probability) -> Probability:
    """Lower bound on error in ``[0.5, 1]`` for known priors.

    Accepts ``h`` beyond the corner up to the mirror image of the point
    ``(h(0.5), 0.5)``; on ``[0, 2 p_min]`` it equals ``1 - analytical_upper``.
    """
    return 1.0 - extended_analytical_upper(h, p_min)


def conditional_entropy_max(p_min: Probability) -> Bits:
    return binary_entropy(_check_p_min(p_min))


# -- membership -------------------------------------------------------------


class Verdict(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Membership:
    """Where a point sits relative to an admissible area.

    ``slacks`` holds the signed slack of every constraint tested; bounds on
    the error are measured in probability, bounds on the entropy in bits.
    """

    verdict: Verdict
    binding: frozenset
    slack: float
    slacks: dict


def classify_point(pt: DiagramPoint, priors: Optional[Priors] = None) -> Membership:
    h, e = pt.h, pt.e
    slacks: dict[CurveKind, float] = {
        CurveKind.FANO_LOWER: e - fano_lower_bound(h, 2),
    }
    if pt.error_kind is ErrorKind.BAYES:
        if priors is None:
            raise DomainError("classifying a Bayes error needs the priors")
        p_min = priors.p_min
        if h <= 2.0 * p_min + RANGE_SLACK:
            slacks[CurveKind.ANALYTICAL_UPPER] = analytical_upper(h, p_min) - e
        slacks[CurveKind.BAYES_ERROR_CAP] = p_min - e
        slacks[CurveKind.ENTROPY_CAP] = binary_entropy(p_min) - h
    else:
        slacks[CurveKind.GENERAL_UPPER] = general_upper_bound(h) - e
        if priors is not None:
            p_min = priors.p_min
            lower = min(e, 1.0 - e)
            kind = CurveKind.ANALYTICAL_UPPER if e <= 0.5 else CurveKind.MIRRORED_ANALYTICAL
            slacks[kind] = h - extended_upper_inverse(lower, p_min)
            slacks[CurveKind.ENTROPY_CAP] = binary_entropy(p_min) - h

    worst = min(slacks.values())
    binding = frozenset(k for k, s in slacks.items() if s <= BOUNDARY_TOL)
    if worst < -BOUNDARY_TOL:
        verdict = Verdict.OUTSIDE
    elif binding:
        verdict = Verdict.BOUNDARY
    else:
        verdict = Verdict.INSIDE
    return Membership(verdict, binding, worst, slacks)


# -- curves -----------------------------------------------------------------


def curve_residual(kind: CurveKind, h: float, e: float, p_min: Optional[float] = None) -> float:
    """Signed distance of ``(h, e)`` from ``kind``'s defining equation.

    Curves given as entropy-of-error are measured along ``h``; the constant
    error cap along ``e``; the constant entropy cap along ``h``.
    """
    if kind.needs_p_min and p_min is None:
        raise DomainError(f"{kind.value} requires p_min")
    if kind is CurveKind.FANO_LOWER or kind is CurveKind.GENERAL_UPPER:
        return h - binary_entropy(e)
    if kind is CurveKind.KOVALEVSKIJ_UPPER:
        return h - 2.0 * e
    if kind is CurveKind.ANALYTICAL_UPPER:
        return h - _upper_curve_h(e, p_min)
    if kind is CurveKind.MIRRORED_ANALYTICAL:
        return h - _upper_curve_h(1.0 - e, p_min)
    if kind is CurveKind.BAYES_ERROR_CAP:
        return e - p_min
    if kind is CurveKind.ENTROPY_CAP:
        return h - binary_entropy(p_min)
    raise ValueError(kind)


def _curve_coordinates(kind: CurveKind, p_min, n: int, extended: bool):
    t = np.linspace(0.0, 1.0, n)
    if kind is CurveKind.FANO_LOWER:
        es = 0.5 * t
        hs = [binary_entropy(e) for e in es]
    elif kind is CurveKind.KOVALEVSKIJ_UPPER:
        es = 0.5 * t
        hs = 2.0 * es
    elif kind is CurveKind.ANALYTICAL_UPPER:
        es = (0.5 if extended else p_min) * t
        hs = [_upper_curve_h(e, p_min) for e in es]
    elif kind is CurveKind.GENERAL_UPPER:
        es = 1.0 - 0.5 * t
        hs = [binary_entropy(e) for e in es]
    elif kind is CurveKind.MIRRORED_ANALYTICAL:
        es = 1.0 - (0.5 if extended else p_min) * t
        hs = [_upper_curve_h(1.0 - e, p_min) for e in es]
    elif kind is CurveKind.BAYES_ERROR_CAP:
        # constant error: runs from the corner to the entropy cap
        h0, h1 = 2.0 * p_min, binary_entropy(p_min)
        hs = h0 + (h1 - h0) * t
        es = np.full(n, p_min)
    elif kind is CurveKind.ENTROPY_CAP:
        es = p_min + (1.0 - 2.0 * p_min) * t
        hs = np.full(n, binary_entropy(p_min))
    else:
        raise ValueError(kind)
    return [float(h) for h in hs], [float(e) for e in es]


_NON_BAYES_KINDS = frozenset(
    {CurveKind.GENERAL_UPPER, CurveKind.MIRRORED_ANALYTICAL, CurveKind.ENTROPY_CAP}
)


def curve_samples(
    kind: CurveKind, p_min: Optional[Probability] = None, n: int = 256, extended: bool = False
) -> BoundCurve:
    """Sample ``n`` points of a bound curve, uniformly in the error.

    ``extended`` continues the analytical and mirrored analytical curves from
    the Bayes corner to ``e = 0.5`` (the non-Bayes diagram). The error cap is
    a constant-error segment and is sampled uniformly in entropy instead.
    """
    if n < 2:
        raise DomainError(f"need at least two samples, got n={n}")
    if kind.needs_p_min:
        if p_min is None:
            raise DomainError(f"{kind.value} requires p_min")
        p_min = _check_p_min(p_min)
    hs, es = _curve_coordinates(kind, p_min, n, extended)
    error_kind = ErrorKind.NON_BAYES if kind in _NON_BAYES_KINDS else ErrorKind.BAYES
    points = sorted(
        (DiagramPoint(h, e, error_kind) for h, e in zip(hs, es)), key=lambda pt: (pt.h, pt.e)
    )
    for pt in points:
        if abs(curve_residual(kind, pt.h, pt.e, p_min)) > CURVE_TOL:
            raise AssertionError(f"sample {pt} is off the {kind.value} curve")
    return BoundCurve(kind, tuple(points), p_min)
