"""Independent certification of the bounds.

Three kinds of evidence:

* brute-force oracles that extremise the conditional entropy over every
  feasible split of a fixed total error into ``e1 + e2``;
* Monte Carlo falsification over counter-seeded random settings;
* direct measurements (tightness against the piecewise-linear bound, finite
  differences of the mutual information).

Sampling is counter based: sample ``i`` depends only on ``(seed, i)``. Samples
are processed in fixed-size blocks so that a vectorised evaluation sees each
sample at the same array position regardless of how blocks are distributed
over worker processes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from ._numerics import golden_section_min, increasing_root
from .bounds import analytical_upper, analytical_upper_inverse
from .entropy import _mi_terms, binary_entropy, conditional_entropy, mi_derivative_in_e
from .types import (
    DiagramPoint,
    DomainError,
    JointSetting,
    Priors,
    VerificationReport,
    make_setting,
    probability,
)

BLOCK_SIZE = 1 << 16
ORACLE_WIDTH = 1e-10
FD_STEP = 1e-6
FD_TOL = 1e-5
PROBE_TOL = 1e-6
FREE_P1_RANGE = (0.01, 0.99)

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@dataclass(frozen=True)
class SamplerConfig:
    """Monte Carlo configuration; ``priors=None`` draws p1 uniformly per sample."""

    seed: int
    n_samples: int
    priors: Optional[Priors] = None
    tolerance: float = 1e-9

    def __post_init__(self):
        if int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise DomainError(f"n_samples={self.n_samples!r} must be a positive integer")
        if not self.tolerance > 0:
            raise DomainError(f"tolerance={self.tolerance!r} must be positive")
        object.__setattr__(self, "seed", int(self.seed) & _MASK64)


# -- counter-based sampler --------------------------------------------------


def _splitmix64(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = x + _GOLDEN_GAMMA
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def _uniforms(seed: int, index: np.ndarray, stream: int) -> np.ndarray:
    """Uniform doubles in [0, 1) keyed on ``(seed, index, stream)``."""
    key = _splitmix64(np.array([seed], dtype=np.uint64))[0]
    with np.errstate(over="ignore"):
        counter = index.astype(np.uint64) * np.uint64(4) + np.uint64(stream)
    z = _splitmix64(_splitmix64(counter ^ key))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def _sample_arrays(cfg: SamplerConfig, index: np.ndarray):
    if cfg.priors is None:
        lo, hi = FREE_P1_RANGE
        p1 = lo + (hi - lo) * _uniforms(cfg.seed, index, 0)
        p2 = 1.0 - p1
    else:
        p1 = np.full(index.shape, cfg.priors.p1)
        p2 = np.full(index.shape, cfg.priors.p2)
    e1 = p1 * _uniforms(cfg.seed, index, 1)
    e2 = p2 * _uniforms(cfg.seed, index, 2)
    return p1, p2, e1, e2


def sample_setting(cfg: SamplerConfig, index: int) -> JointSetting:
    if not 0 <= index < cfg.n_samples:
        raise DomainError(f"index {index} outside [0, {cfg.n_samples})")
    p1, p2, e1, e2 = (float(a[0]) for a in _sample_arrays(cfg, np.array([index])))
    priors = cfg.priors if cfg.priors is not None else Priors(p1, p2)
    return make_setting(priors, e1, e2)


# -- vectorised evaluation --------------------------------------------------


def _xlog2x_over(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    positive = p > 0.0
    ratio = np.divide(p, q, out=np.ones_like(p), where=positive)
    return np.where(positive, p * np.log2(ratio), 0.0)


def _binary_entropy_array(e: np.ndarray) -> np.ndarray:
    return -(_xlog2x_over(e, np.ones_like(e)) + _xlog2x_over(1.0 - e, np.ones_like(e)))


def _conditional_entropy_array(p1, p2, e1, e2) -> np.ndarray:
    h_t = _binary_entropy_array(p1)
    q1 = p1 - e1 + e2
    q2 = p2 + e1 - e2
    return (
        h_t
        - _xlog2x_over(e1, q2 * p1)
        - _xlog2x_over(e2, q1 * p2)
        - _xlog2x_over(p1 - e1, q1 * p1)
        - _xlog2x_over(p2 - e2, q2 * p2)
    )


def _upper_curve_array(e: np.ndarray, p_min: np.ndarray) -> np.ndarray:
    return _xlog2x_over(p_min, e + p_min) * -1.0 - _xlog2x_over(e, e + p_min)


CHECK_NAMES = ("fano", "entropy_cap", "analytical")


def _slacks(p1, p2, e1, e2) -> np.ndarray:
    """Rows: h <= H(e), h <= H(p_min), h >= analytical curve at min(e, 1-e)."""
    h = _conditional_entropy_array(p1, p2, e1, e2)
    e = e1 + e2
    p_min = np.minimum(p1, p2)
    return np.stack(
        [
            _binary_entropy_array(e) - h,
            _binary_entropy_array(p_min) - h,
            h - _upper_curve_array(np.minimum(e, 1.0 - e), p_min),
        ]
    )


@dataclass(frozen=True)
class _Partial:
    count: int
    violations: int
    worst: tuple[float, float, float]

    @staticmethod
    def of(slacks: np.ndarray, tolerance: float) -> "_Partial":
        violated = (slacks < -tolerance).any(axis=0)
        return _Partial(
            int(slacks.shape[1]),
            int(violated.sum()),
            tuple(float(v) for v in slacks.min(axis=1)),
        )

    def merge(self, other: "_Partial") -> "_Partial":
        return _Partial(
            self.count + other.count,
            self.violations + other.violations,
            tuple(min(a, b) for a, b in zip(self.worst, other.worst)),
        )


def _certify_block(args) -> _Partial:
    cfg, block = args
    start = block * BLOCK_SIZE
    stop = min(start + BLOCK_SIZE, cfg.n_samples)
    index = np.arange(start, stop, dtype=np.uint64)
    return _Partial.of(_slacks(*_sample_arrays(cfg, index)), cfg.tolerance)


def _report(partial: _Partial, tolerance: float, notes: str) -> VerificationReport:
    worst = min(partial.worst)
    details = {f"worst_slack_{name}": w for name, w in zip(CHECK_NAMES, partial.worst)}
    details["tolerance"] = tolerance
    return VerificationReport(
        samples_checked=partial.count,
        violations=partial.violations,
        max_violation=max(0.0, -worst),
        notes=notes,
        details=details,
    )


def certify_bounds(cfg: SamplerConfig, workers: int = 1) -> VerificationReport:
    """Check the three entropy/error inequalities on ``cfg.n_samples`` settings."""
    n_blocks = -(-cfg.n_samples // BLOCK_SIZE)
    jobs = [(cfg, b) for b in range(n_blocks)]
    if workers > 1 and n_blocks > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_certify_block, jobs))
    else:
        partials = [_certify_block(job) for job in jobs]
    total = partials[0]
    for part in partials[1:]:
        total = total.merge(part)
    mode = "fixed priors" if cfg.priors is not None else "free priors"
    return _report(total, cfg.tolerance, f"seed={cfg.seed} {mode}")


def certify_settings(settings: Iterable[JointSetting], tolerance: float = 1e-9) -> VerificationReport:
    """Run the same checks on explicit settings."""
    rows = np.array([(s.priors.p1, s.priors.p2, s.e1, s.e2) for s in settings], dtype=float)
    if rows.size == 0:
        raise DomainError("no settings to certify")
    slacks = _slacks(*rows.T)
    report = _report(_Partial.of(slacks, tolerance), tolerance, "explicit settings")
    return VerificationReport(
        report.samples_checked,
        report.violations,
        report.max_violation,
        notes=report.notes,
        details={**report.details, "slacks": slacks.T.tolist()},
    )


def setting_slacks(s: JointSetting) -> dict[str, float]:
    slacks = _slacks(*np.array([[s.priors.p1], [s.priors.p2], [s.e1], [s.e2]]))
    return {name: float(v[0]) for name, v in zip(CHECK_NAMES, slacks)}


# -- brute-force oracles ----------------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    e: float
    extremal_h: float
    arg_e2: float
    closed_form_h: float

    @property
    def abs_gap(self) -> float:
        return abs(self.extremal_h - self.closed_form_h)


def _split_range(p: Priors, e: float) -> tuple[float, float]:
    return max(0.0, e - p.p1), min(e, p.p2)


def _h_of_split(p: Priors, e: float, e2: float) -> float:
    return conditional_entropy(make_setting(p, e - e2, e2))


def _scan_extremum(p: Priors, e: float, grid: int, sign: float) -> tuple[float, float]:
    """Minimise ``sign * h`` over the feasible ``e2``; returns ``(e2, h)``."""
    lo, hi = _split_range(p, e)
    if hi - lo <= 0.0:
        return lo, _h_of_split(p, e, lo)
    xs = np.linspace(lo, hi, grid)
    vals = [sign * _h_of_split(p, e, float(x)) for x in xs]
    i = int(np.argmin(vals))
    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, grid - 1)])
    x, v = golden_section_min(lambda t: sign * _h_of_split(p, e, t), a, b, ORACLE_WIDTH)
    if vals[i] < v:
        x, v = float(xs[i]), vals[i]
    return x, sign * v


def _check_grid(grid: int) -> int:
    if int(grid) != grid or grid < 100:
        raise DomainError(f"oracle grid must be an integer >= 100, got {grid!r}")
    return int(grid)


def brute_force_min_h(p: Priors, e: float, grid: int = 10_000) -> OracleResult:
    """Smallest conditional entropy over all settings with total error ``e``."""
    grid = _check_grid(grid)
    e = probability(e, "e")
    closed = analytical_upper_inverse(e, p.p_min)
    e2, h = _scan_extremum(p, min(e, p.p_min), grid, 1.0)
    return OracleResult(e, h, e2, closed)


def brute_force_max_h(p: Priors, e: float, grid: int = 10_000) -> OracleResult:
    """Largest conditional entropy over all settings with total error ``e``.

    The closed form is known in two regimes: ``e <= p_min`` (binary entropy of
    ``e``) and ``p_min <= e <= p_max`` (zero mutual information). Elsewhere the
    scan value is reported as is.
    """
    grid = _check_grid(grid)
    e = probability(e, "e")
    e2, h = _scan_extremum(p, e, grid, -1.0)
    if e <= p.p_min:
        closed = binary_entropy(e)
    elif e <= p.p_max:
        closed = binary_entropy(p.p_min)
    else:
        closed = h
    return OracleResult(e, h, e2, closed)


# -- measurements -----------------------------------------------------------


def tightness_report(p_min: float, grid: int = 400) -> VerificationReport:
    """Ratio of the analytical upper bound to ``h / 2`` inside ``(0, 2 p_min)``."""
    p_min = probability(p_min, "p_min")
    if not 0.0 < p_min <= 0.5:
        raise DomainError(f"p_min={p_min} must lie in (0, 0.5]")
    if grid < 1:
        raise DomainError("grid must be positive")
    hs = [2.0 * p_min * i / (grid + 1) for i in range(1, grid + 1)]
    ratios = [min(p_min, analytical_upper(h, p_min)) / (h / 2.0) for h in hs]
    i_min = int(np.argmin(ratios))
    i_max = int(np.argmax(ratios))
    violations = sum(r > 1.0 + 1e-9 for r in ratios)
    return VerificationReport(
        samples_checked=grid,
        violations=violations,
        max_violation=max(0.0, ratios[i_max] - 1.0),
        tightness_min_ratio=ratios[i_min],
        notes=f"p_min={p_min:.12g}",
        details={
            "h_at_min_ratio": hs[i_min],
            "max_ratio": ratios[i_max],
            "h_at_max_ratio": hs[i_max],
        },
    )


def direct_mi(p2: float, e2: float, e: float) -> float:
    """Mutual information of the table with ``e1 = e - e2`` and ``p1 = 1 - p2``."""
    p1, e1 = 1.0 - p2, e - e2
    return _mi_terms(p1 - e1, e1, e2, p2 - e2)


def mi_finite_difference(p2: float, e2: float, e: float, step: float = FD_STEP) -> float:
    return (direct_mi(p2, e2, e + step) - direct_mi(p2, e2, e - step)) / (2.0 * step)


def derivative_grid(grid: int) -> list[tuple[float, float, float]]:
    """Triples ``(p2, e2, e)`` with ``0.5 > p2 > e > e2 >= 0``."""
    triples = []
    for i in range(grid):
        p2 = 0.04 + 0.44 * i / (grid - 1)
        for j in range(grid):
            e = p2 * (j + 1) / (grid + 1)
            for k in range(grid):
                triples.append((p2, e * k / grid, e))
    return triples


def derivative_check(grid: int = 10) -> VerificationReport:
    if grid < 10:
        raise DomainError(f"grid={grid} must be at least 10")
    worst_gap = 0.0
    largest = -math.inf
    violations = 0
    triples = derivative_grid(grid)
    for p2, e2, e in triples:
        closed = mi_derivative_in_e(p2, e2, e)
        gap = abs(closed - mi_finite_difference(p2, e2, e))
        worst_gap = max(worst_gap, gap)
        largest = max(largest, closed)
        if gap > FD_TOL or not closed < 0.0:
            violations += 1
    return VerificationReport(
        samples_checked=len(triples),
        violations=violations,
        max_violation=worst_gap,
        notes="closed-form MI derivative vs central differences",
        details={"largest_derivative": largest, "fd_step": FD_STEP},
    )


# -- admissibility ----------------------------------------------------------


@dataclass(frozen=True)
class ProbeResult:
    found: bool
    witness: Optional[JointSetting]
    min_distance: float


def _split_search(p: Priors, e: float, target: float, budget: int):
    """Look for ``e2`` with total error ``e`` and entropy ``target``.

    The entropy is concave along the split, so it rises to one maximum and
    falls again; bisection runs on whichever monotone side brackets the target.
    Returns ``(setting, |h - target|)`` for the closest setting found.
    """
    lo, hi = _split_range(p, e)
    xs = np.linspace(lo, hi, budget) if hi > lo else np.array([lo])
    hs = _conditional_entropy_array(
        np.full_like(xs, p.p1), np.full_like(xs, p.p2), e - xs, xs
    ).tolist()
    i = int(np.argmax(hs))
    x_top, h_top = float(xs[i]), hs[i]
    candidates = [(abs(h - target), float(x)) for h, x in zip(hs, xs)]
    if hs[0] <= target <= h_top:
        x = increasing_root(lambda t: _h_of_split(p, e, t) - target, float(xs[0]), x_top)
        candidates.append((abs(_h_of_split(p, e, x) - target), x))
    if hs[-1] <= target <= h_top:
        x = increasing_root(lambda t: target - _h_of_split(p, e, t), x_top, float(xs[-1]))
        candidates.append((abs(_h_of_split(p, e, x) - target), x))
    gap, x = min(candidates)
    return make_setting(p, e - x, x), gap


def _nearest_on_grid(priors: Sequence[Priors], pt: DiagramPoint, side: int) -> float:
    u = np.linspace(0.0, 1.0, side)
    best = math.inf
    for p in priors:
        e1 = (p.p1 * u)[:, None] * np.ones(side)
        e2 = np.ones(side)[:, None] * (p.p2 * u)
        h = _conditional_entropy_array(np.full_like(e1, p.p1), np.full_like(e1, p.p2), e1, e2)
        d = np.hypot(h - pt.h, e1 + e2 - pt.e)
        best = min(best, float(d.min()))
    return best


def admissibility_probe(
    pt: DiagramPoint, priors: Optional[Priors] = None, budget: int = 1000
) -> ProbeResult:
    """Search for a binary setting realising ``pt``; report the nearest miss otherwise."""
    if budget < 100:
        raise DomainError(f"budget={budget} must be at least 100")
    if priors is not None:
        candidates = [priors]
        side = budget
    else:
        candidates = [Priors(p1, 1.0 - p1) for p1 in (np.arange(budget) + 0.5) / budget]
        side = max(20, int(round(budget**0.5)))

    best_gap = math.inf
    for p in candidates:
        setting, gap = _split_search(p, pt.e, pt.h, budget)
        best_gap = min(best_gap, gap)
        if gap <= PROBE_TOL:
            return ProbeResult(True, setting, gap)

    grid_distance = _nearest_on_grid(candidates, pt, side)
    return ProbeResult(False, None, min(best_gap, grid_distance))
