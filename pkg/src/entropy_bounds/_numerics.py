"""Bracketed scalar solvers shared by the bound inversions and the oracles."""

from __future__ import annotations

import math
from typing import Callable

from scipy import optimize

ROOT_XTOL = 1e-15  # well inside the 1e-12 root budget
ROOT_MAXITER = 200

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def increasing_root(f: Callable[[float], float], lo: float, hi: float) -> float:
    """Root of a nondecreasing ``f`` on ``[lo, hi]``.

    Endpoint roots are returned exactly, and a target sitting a few ulps past
    an endpoint snaps to that endpoint instead of failing the sign test.
    """
    f_lo = f(lo)
    if f_lo >= 0.0:
        return lo
    f_hi = f(hi)
    if f_hi <= 0.0:
        return hi
    return optimize.bisect(f, lo, hi, xtol=ROOT_XTOL, maxiter=ROOT_MAXITER)


def golden_section_min(
    f: Callable[[float], float], lo: float, hi: float, width: float = 1e-10
) -> tuple[float, float]:
    """Minimise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``.

    The endpoints are compared against the interior estimate so a minimum
    pinned to the boundary is reported at the boundary itself.
    """
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > width:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    best = (x, f(x))
    for edge in (lo, hi):
        f_edge = f(edge)
        if f_edge <= best[1]:
            best = (edge, f_edge)
    return best
