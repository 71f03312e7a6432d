"""Validated value types for binary classification settings.

Every probability that enters the library passes through :func:`probability`
and every entropy through :func:`bits`; both tolerate a few ulps of
round-off from root finders and clamp back into range.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

Probability = float
Bits = float

# Slack accepted on range checks before clamping.
RANGE_SLACK = 1e-12
# Tolerance for points lying on a curve's defining equation.
CURVE_TOL = 1e-9


class DomainError(ValueError):
    """An argument lies outside the domain where a quantity is defined."""


def probability(value: float, name: str = "probability") -> Probability:
    value = float(value)
    if math.isnan(value) or value < -RANGE_SLACK or value > 1.0 + RANGE_SLACK:
        raise DomainError(f"{name}={value!r} is not in [0, 1]")
    return min(1.0, max(0.0, value))


def bits(value: float, upper: Optional[float] = None, name: str = "entropy") -> Bits:
    """Validate an entropy in bits; ``upper`` caps it (1 for binary problems)."""
    value = float(value)
    if math.isnan(value) or value < -RANGE_SLACK:
        raise DomainError(f"{name}={value!r} is negative")
    if upper is not None and value > upper + RANGE_SLACK:
        raise DomainError(f"{name}={value!r} exceeds {upper!r} bits")
    value = max(0.0, value)
    if upper is not None:
        value = min(upper, value)
    return value


class ErrorKind(enum.Enum):
    BAYES = "bayes"
    NON_BAYES = "nonbayes"


class CurveKind(enum.Enum):
    FANO_LOWER = "FanoLower"
    KOVALEVSKIJ_UPPER = "KovalevskijUpper"
    ANALYTICAL_UPPER = "AnalyticalUpper"
    BAYES_ERROR_CAP = "BayesErrorCap"
    GENERAL_UPPER = "GeneralUpper"
    MIRRORED_ANALYTICAL = "MirroredAnalytical"
    ENTROPY_CAP = "EntropyCap"

    @property
    def needs_p_min(self) -> bool:
        return self in _PMIN_KINDS


_PMIN_KINDS = frozenset(
    {
        CurveKind.ANALYTICAL_UPPER,
        CurveKind.MIRRORED_ANALYTICAL,
        CurveKind.BAYES_ERROR_CAP,
        CurveKind.ENTROPY_CAP,
    }
)


@dataclass(frozen=True)
class Priors:
    """Class prior pair; both strictly inside (0, 1)."""

    p1: float
    p2: float

    def __post_init__(self):
        p1 = probability(self.p1, "p1")
        p2 = probability(self.p2, "p2")
        if abs(p1 + p2 - 1.0) > RANGE_SLACK:
            raise DomainError(f"priors ({p1}, {p2}) do not sum to 1")
        if not (0.0 < p1 < 1.0 and 0.0 < p2 < 1.0):
            raise DomainError(f"priors ({p1}, {p2}) must lie strictly inside (0, 1)")
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)

    @property
    def p_min(self) -> Probability:
        return min(self.p1, self.p2)

    @property
    def p_max(self) -> Probability:
        return max(self.p1, self.p2)


def make_priors(p1: float) -> Priors:
    p1 = float(p1)
    if not 0.0 < p1 < 1.0:
        raise DomainError(f"p1={p1!r} must lie strictly inside (0, 1)")
    return Priors(p1, 1.0 - p1)


@dataclass(frozen=True)
class JointSetting:
    """Joint distribution p(t, y) of true class t and classifier output y.

    ``p12`` is the mass of class 1 labelled as class 2 (the class-1 error
    ``e1``) and ``p21`` the mass of class 2 labelled as class 1 (``e2``).
    """

    p11: float
    p12: float
    p21: float
    p22: float
    priors: Priors = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        cells = [probability(getattr(self, n), n) for n in ("p11", "p12", "p21", "p22")]
        if abs(math.fsum(cells) - 1.0) > RANGE_SLACK:
            raise DomainError(f"joint table {cells} does not sum to 1")
        for name, value in zip(("p11", "p12", "p21", "p22"), cells):
            object.__setattr__(self, name, value)
        row1 = cells[0] + cells[1]
        row2 = cells[2] + cells[3]
        if self.priors is None:
            object.__setattr__(self, "priors", Priors(row1, row2))
        elif abs(row1 - self.priors.p1) > RANGE_SLACK or abs(row2 - self.priors.p2) > RANGE_SLACK:
            raise DomainError(
                f"row sums ({row1}, {row2}) disagree with priors "
                f"({self.priors.p1}, {self.priors.p2})"
            )

    @property
    def e1(self) -> Probability:
        return self.p12

    @property
    def e2(self) -> Probability:
        return self.p21

    @property
    def e(self) -> Probability:
        return probability(self.p12 + self.p21, "e")

    @property
    def cells(self) -> tuple[float, float, float, float]:
        return (self.p11, self.p12, self.p21, self.p22)


def make_setting(priors: Priors, e1: float, e2: float) -> JointSetting:
    e1 = probability(e1, "e1")
    e2 = probability(e2, "e2")
    if e1 > priors.p1 + RANGE_SLACK:
        raise DomainError(f"e1={e1} exceeds p1={priors.p1}")
    if e2 > priors.p2 + RANGE_SLACK:
        raise DomainError(f"e2={e2} exceeds p2={priors.p2}")
    e1 = min(e1, priors.p1)
    e2 = min(e2, priors.p2)
    return JointSetting(priors.p1 - e1, e1, e2, priors.p2 - e2, priors=priors)


@dataclass(frozen=True)
class DiagramPoint:
    """A classifier located in the (conditional entropy, error) plane."""

    h: Bits
    e: Probability
    error_kind: ErrorKind = ErrorKind.NON_BAYES

    def __post_init__(self):
        object.__setattr__(self, "h", bits(self.h, upper=1.0, name="h"))
        object.__setattr__(self, "e", probability(self.e, "e"))
        if self.error_kind is ErrorKind.BAYES and self.e > 0.5 + RANGE_SLACK:
            raise DomainError(f"a Bayes error cannot exceed 0.5 (got {self.e})")


@dataclass(frozen=True)
class BoundCurve:
    """Sampled bound curve, ordered by nondecreasing entropy."""

    kind: CurveKind
    points: tuple[DiagramPoint, ...]
    p_min: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.kind.needs_p_min and self.p_min is None:
            raise DomainError(f"{self.kind.value} requires p_min")
        hs = [pt.h for pt in self.points]
        if any(b < a for a, b in zip(hs, hs[1:])):
            raise DomainError("curve points must be ordered by nondecreasing h")


@dataclass(frozen=True)
class VerificationReport:
    samples_checked: int
    violations: int
    max_violation: float
    tightness_min_ratio: Optional[float] = None
    notes: str = ""
    details: dict = field(default_factory=dict, compare=True)

    def as_lines(self) -> list[str]:
        lines = [
            f"samples_checked: {self.samples_checked}",
            f"violations: {self.violations}",
            f"max_violation: {self.max_violation:.12g}",
        ]
        if self.tightness_min_ratio is not None:
            lines.append(f"tightness_min_ratio: {self.tightness_min_ratio:.12g}")
        for key, value in self.details.items():
            if isinstance(value, float):
                value = f"{value:.12g}"
            lines.append(f"{key}: {value}")
        if self.notes:
            lines.append(f"notes: {self.notes}")
        return lines
