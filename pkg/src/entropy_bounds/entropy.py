"""Binary entropy, its inverse, and exact conditional entropy of a 2x2 table.

Zero-mass terms contribute nothing (``0 * log 0 = 0``); they are skipped
rather than regularised, so boundary settings evaluate exactly.
"""

from __future__ import annotations

import enum
import math

from ._numerics import increasing_root
from .types import Bits, DomainError, JointSetting, Priors, Probability, bits, probability


class EntropyBranch(enum.Enum):
    LOWER = "lower"  # preimage in [0, 0.5]
    UPPER = "upper"  # preimage in [0.5, 1]


def _xlog2x_over(p: float, q: float) -> float:
    """``p * log2(p / q)`` with the zero-mass convention."""
    if p <= 0.0:
        return 0.0
    return p * math.log2(p / q)


def binary_entropy(e: Probability) -> Bits:
    e = probability(e, "e")
    if e == 0.0 or e == 1.0:
        return 0.0
    return bits(-e * math.log2(e) - (1.0 - e) * math.log2(1.0 - e), upper=1.0)


def binary_entropy_inverse(h: Bits, branch: EntropyBranch = EntropyBranch.LOWER) -> Probability:
    """Preimage of ``h`` under the binary entropy on the requested branch."""
    h = bits(h, upper=1.0, name="h")
    if branch is EntropyBranch.LOWER:
        return increasing_root(lambda e: binary_entropy(e) - h, 0.0, 0.5)
    return increasing_root(lambda e: h - binary_entropy(e), 0.5, 1.0)


def prior_entropy(p: Priors) -> Bits:
    return binary_entropy(p.p_min)


def _mi_terms(p11: float, p12: float, p21: float, p22: float) -> float:
    p1, p2 = p11 + p12, p21 + p22
    q1, q2 = p11 + p21, p12 + p22
    return (
        _xlog2x_over(p11, q1 * p1)
        + _xlog2x_over(p12, q2 * p1)
        + _xlog2x_over(p21, q1 * p2)
        + _xlog2x_over(p22, q2 * p2)
    )


def mutual_information(s: JointSetting) -> Bits:
    """Mutual information between true class and output, four-term sum."""
    return bits(_mi_terms(*s.cells), upper=prior_entropy(s.priors))


def conditional_entropy(s: JointSetting) -> Bits:
    """H(T|Y) of a joint table.

    Equal to the prior entropy minus the four information terms; the
    ``p_i log2 p_i`` parts cancel analytically, leaving one term per cell
    relative to its output column. A column holding a single class then
    contributes exactly zero.
    """
    e1, e2 = s.e1, s.e2
    p1, p2 = s.priors.p1, s.priors.p2
    q1 = p1 - e1 + e2
    q2 = p2 + e1 - e2
    h = -(
        _xlog2x_over(e1, q2)
        + _xlog2x_over(e2, q1)
        + _xlog2x_over(p1 - e1, q1)
        + _xlog2x_over(p2 - e2, q2)
    )
    return bits(h, upper=prior_entropy(s.priors))


def mi_derivative_in_e(p2: Probability, e2: Probability, e: Probability) -> float:
    """d MI / d e at fixed ``e2`` and ``p2``, with ``e1 = e - e2``.

    Defined for ``1 > 1 - p2 > p2 > e > e2 >= 0``. At ``e == e2`` the class-1
    error vanishes and the derivative diverges to minus infinity, so that
    point is rejected too.
    """
    p2 = probability(p2, "p2")
    e2 = probability(e2, "e2")
    e = probability(e, "e")
    if not (1.0 > 1.0 - p2 > p2 > e > e2 >= 0.0):
        raise DomainError(
            f"need 1 > 1-p2 > p2 > e > e2 >= 0, got p2={p2}, e={e}, e2={e2}"
        )
    num = (1.0 - p2 - e + 2.0 * e2) * (e - e2)
    den = (1.0 - p2 - e + e2) * (e - 2.0 * e2 + p2)
    return math.log2(num / den)
