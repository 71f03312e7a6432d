"""Joint tables for the extremal classifiers and the named diagram points.

Tables are written cell by cell with exact zeros where a class is never
(or always) mislabelled.
"""

from __future__ import annotations

import enum

from .types import (
    RANGE_SLACK,
    DomainError,
    JointSetting,
    Priors,
    Probability,
    make_setting,
    probability,
)


class KeyPointKind(enum.Enum):
    O = "O"
    A_NO_CLASSIFICATION_1 = "A_NoClassification1"
    A_NO_CLASSIFICATION_2 = "A_NoClassification2"
    A_RANDOM_GUESS = "A_RandomGuess"
    D = "D"
    BC = "BC"
    BC_PRIME_ALL_TO_ONE = "BCPrime_AllToOne"
    BC_PRIME_SYMMETRIC = "BCPrime_Symmetric"
    EF = "EF"
    A_PRIME = "APrime"


def fano_family_setting(p: Priors, e2: Probability) -> JointSetting:
    """Setting whose rows are proportional, i.e. output independent of class.

    Every member has zero mutual information, so its conditional entropy is
    the prior entropy whatever its error.
    """
    e2 = probability(e2, "e2")
    if e2 > p.p2 + RANGE_SLACK:
        raise DomainError(f"e2={e2} exceeds p2={p.p2}")
    e1 = p.p1 * (p.p2 - e2) / p.p2
    if e1 > p.p1 + RANGE_SLACK:
        raise DomainError(f"e1={e1} exceeds p1={p.p1}")
    return make_setting(p, e1, e2)


def upper_extremal_setting(p: Priors, e: Probability) -> JointSetting:
    """All error mass on the majority class (class 1 on a tie)."""
    e = probability(e, "e")
    if e > p.p_min + RANGE_SLACK:
        raise DomainError(f"e={e} exceeds p_min={p.p_min}")
    e = min(e, p.p_min)
    if p.p1 >= p.p2:
        return make_setting(p, e, 0.0)
    return make_setting(p, 0.0, e)


def symmetric_noise_setting(e: Probability) -> JointSetting:
    """Balanced classes with each label flipped at rate ``e``."""
    e = probability(e, "e")
    return JointSetting(0.5 - e / 2, e / 2, e / 2, 0.5 - e / 2, priors=Priors(0.5, 0.5))


def mirrored_extremal_setting(p: Priors, e: Probability) -> JointSetting:
    """Minority class always mislabelled, the rest of the error on class 1.

    Total error is ``e = e1 + e2`` with ``e2 = p2``; this puts the setting on
    the analytical curve mirrored about ``e = 0.5``.
    """
    e = probability(e, "e")
    if not p.p1 > p.p2:
        raise DomainError("the mirrored extremal setting needs p1 > p2")
    if not 0.5 < e <= 1.0:
        raise DomainError(f"e={e} must lie in (0.5, 1]")
    if e - p.p2 > p.p1 + RANGE_SLACK:
        raise DomainError(f"e={e} exceeds the total prior mass")
    return make_setting(p, e - p.p2, p.p2)


_BALANCED_ONLY = {
    KeyPointKind.A_NO_CLASSIFICATION_1,
    KeyPointKind.A_NO_CLASSIFICATION_2,
    KeyPointKind.A_RANDOM_GUESS,
}
_MAJORITY_FIRST = {
    KeyPointKind.BC,
    KeyPointKind.BC_PRIME_ALL_TO_ONE,
    KeyPointKind.BC_PRIME_SYMMETRIC,
    KeyPointKind.EF,
}


def key_point_setting(kind: KeyPointKind, p: Priors) -> JointSetting:
    p1, p2 = p.p1, p.p2
    if kind in _BALANCED_ONLY and (p1, p2) != (0.5, 0.5):
        raise DomainError(f"{kind.value} is defined for balanced priors only")
    if kind in _MAJORITY_FIRST and not p1 > p2:
        raise DomainError(f"{kind.value} needs p1 > p2")
    if kind is KeyPointKind.A_PRIME and not p1 > 0.5:
        raise DomainError("A' needs p1 > 0.5")

    if kind is KeyPointKind.O:
        cells = (p1, 0.0, 0.0, p2)
    elif kind is KeyPointKind.A_NO_CLASSIFICATION_1:
        cells = (0.5, 0.0, 0.5, 0.0)
    elif kind is KeyPointKind.A_NO_CLASSIFICATION_2:
        cells = (0.0, 0.5, 0.0, 0.5)
    elif kind is KeyPointKind.A_RANDOM_GUESS:
        cells = (0.25, 0.25, 0.25, 0.25)
    elif kind is KeyPointKind.D:
        cells = (0.0, p1, p2, 0.0)
    elif kind is KeyPointKind.BC:
        cells = (p1 - p2, p2, 0.0, p2)
    elif kind is KeyPointKind.BC_PRIME_ALL_TO_ONE:
        cells = (p1, 0.0, p2, 0.0)
    elif kind is KeyPointKind.BC_PRIME_SYMMETRIC:
        # balanced classes at error p2, same diagram point as predicting all class 1
        return symmetric_noise_setting(p2)
    elif kind is KeyPointKind.EF:
        cells = (0.0, p1, 0.0, p2)
    elif kind is KeyPointKind.A_PRIME:
        cells = (p1 - 0.5, 0.5, 0.0, p2)
    else:
        raise ValueError(kind)
    return JointSetting(*cells, priors=p)

