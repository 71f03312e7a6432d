"""Exact relations between conditional entropy and error probability in binary classification."""

from .bounds import (
    BoundQuery,
    Membership,
    Verdict,
    analytical_upper,
    analytical_upper_inverse,
    bayes_error_cap,
    classify_point,
    conditional_entropy_max,
    curve_samples,
    extended_analytical_upper,
    extended_upper_inverse,
    fano_lower_bound,
    general_upper_bound,
    kovalevskij_upper_bound,
    mirrored_analytical_lower,
)
from .entropy import (
    EntropyBranch,
    binary_entropy,
    binary_entropy_inverse,
    conditional_entropy,
    mi_derivative_in_e,
    mutual_information,
    prior_entropy,
)
from .settings import (
    KeyPointKind,
    fano_family_setting,
    key_point_setting,
    mirrored_extremal_setting,
    symmetric_noise_setting,
    upper_extremal_setting,
)
from .types import (
    BoundCurve,
    CurveKind,
    DiagramPoint,
    DomainError,
    ErrorKind,
    JointSetting,
    Priors,
    VerificationReport,
    make_priors,
    make_setting,
)

__version__ = "0.1.0"

__all__ = [
    "BoundQuery",
    "Membership",
    "Verdict",
    "analytical_upper",
    "analytical_upper_inverse",
    "bayes_error_cap",
    "classify_point",
    "conditional_entropy_max",
    "curve_samples",
    "extended_analytical_upper",
    "extended_upper_inverse",
    "fano_lower_bound",
    "general_upper_bound",
    "kovalevskij_upper_bound",
    "mirrored_analytical_lower",
    "EntropyBranch",
    "binary_entropy",
    "binary_entropy_inverse",
    "conditional_entropy",
    "mi_derivative_in_e",
    "mutual_information",
    "prior_entropy",
    "KeyPointKind",
    "fano_family_setting",
    "key_point_setting",
    "mirrored_extremal_setting",
    "symmetric_noise_setting",
    "upper_extremal_setting",
    "BoundCurve",
    "CurveKind",
    "DiagramPoint",
    "DomainError",
    "ErrorKind",
    "JointSetting",
    "Priors",
    "VerificationReport",
    "make_priors",
    "make_setting",
]
