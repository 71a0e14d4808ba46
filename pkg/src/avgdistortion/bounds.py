"""Sharp two-sided bounds on I(A) from the singular spectrum.

    half_log_sum_sq + E log|x_1|  <=  I(A)  <=  half_log_sum_sq - (1/2) log n

The upper bound is attained by isotropic spectra, the lower one by rank-one
spectra.  The lower constant is the mean of log|x_1| over S^{n-1}
(:func:`specfun.mean_log_coordinate`), not the printed piecewise formula
:func:`specfun.xi_paper`, which is too small by 1/n for even n.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .specfun import EULER_GAMMA, LOG2, _check_dim, digamma_half_value, mean_log_coordinate_value
from .spectrum import SingularSpectrum

# Limit of bound_gap(n) as n -> infinity.
GAP_LIMIT = 0.5 * (EULER_GAMMA + LOG2)
# The same limit as stated in the source text; twice GAP_LIMIT.
GAP_LIMIT_STATED = EULER_GAMMA + LOG2


@dataclass(frozen=True)
class BoundsReport:
    half_log_sum_sq: float
    lower: float
    upper: float
    j_lower: float
    j_upper: float
    gap: float

    def to_dict(self) -> dict:
        return asdict(self)


def distortion_bounds(s: SingularSpectrum) -> BoundsReport:
    n = s.dim
    half = 0.5 * s.log_sum_sq()
    low_const = mean_log_coordinate_value(n)
    up_const = -0.5 * math.log(n)
    return BoundsReport(
        half_log_sum_sq=half,
        lower=half + low_const,
        upper=half + up_const,
        j_lower=2.0 * low_const,
        j_upper=2.0 * up_const,
        gap=up_const - low_const,
    )


def bound_gap(n: int) -> float:
    """upper - lower, which depends on n only.

    Increases with n towards (gamma + log 2) / 2.
    """
    _check_dim(n, 2)
    return math.fsum([LOG2, 0.5 * EULER_GAMMA, 0.5 * digamma_half_value(n), -0.5 * math.log(n)])


def bound_gaps(n_max: int):
    """Vector of bound_gap(n) for n = 0..n_max (entries 0 and 1 are nan)."""
    import numpy as np

    from .specfun import digamma_half_values

    psi = digamma_half_values(n_max)
    n = np.arange(n_max + 1, dtype=float)
    with np.errstate(divide="ignore"):
        out = LOG2 + 0.5 * EULER_GAMMA + 0.5 * psi - 0.5 * np.log(n)
    out[:2] = np.nan
    return out
