"""Exact half-integer special values.

Everything here is built from two base values, Gamma(1) = 1 and
Gamma(1/2) = sqrt(pi), and the recurrences Gamma(x + 1) = x Gamma(x) and
psi(x + 1) = psi(x) + 1/x.  Digamma values at n/2 are returned as exact
combinations ``q + a*gamma + b*log 2`` with rational q, a, b so that
cancellation of Euler's constant can be checked exactly rather than to
within rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

# Euler-Mascheroni constant, 20 significant digits.
EULER_GAMMA = 0.57721566490153286061
LOG2 = math.log(2.0)
LOG_PI = math.log(math.pi)


def _check_dim(n, minimum=1):
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"dimension must be an int, got {type(n).__name__}")
    if n < minimum:
        raise ValueError(f"dimension must be >= {minimum}, got {n}")


@dataclass(frozen=True)
class GammaLogCombination:
    """Exact value ``rational_part + gamma_coeff*gamma + log2_coeff*log(2)``."""

    rational_part: Fraction = Fraction(0)
    gamma_coeff: Fraction = Fraction(0)
    log2_coeff: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("rational_part", "gamma_coeff", "log2_coeff"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GammaLogCombination(other)
        if not isinstance(other, GammaLogCombination):
            return NotImplemented
        return GammaLogCombination(
            self.rational_part + other.rational_part,
            self.gamma_coeff + other.gamma_coeff,
            self.log2_coeff + other.log2_coeff,
        )

    __radd__ = __add__

    def __neg__(self):
        return GammaLogCombination(-self.rational_part, -self.gamma_coeff, -self.log2_coeff)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GammaLogCombination(other)
        if not isinstance(other, GammaLogCombination):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        k = Fraction(k)
        return GammaLogCombination(self.rational_part * k, self.gamma_coeff * k, self.log2_coeff * k)

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return self.gamma_coeff == 0 and self.log2_coeff == 0

    def to_real(self) -> float:
        return math.fsum(
            [
                float(self.rational_part),
                float(self.gamma_coeff) * EULER_GAMMA,
                float(self.log2_coeff) * LOG2,
            ]
        )

    def to_dict(self) -> dict:
        return {
            "rational": str(self.rational_part),
            "gamma_coeff": str(self.gamma_coeff),
            "log2_coeff": str(self.log2_coeff),
            "value": self.to_real(),
        }


GAMMA = GammaLogCombination(gamma_coeff=1)
LOG_2 = GammaLogCombination(log2_coeff=1)


def harmonic(m: int) -> Fraction:
    """H_m = 1 + 1/2 + ... + 1/m, exactly.  H_0 = 0."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return sum((Fraction(1, k) for k in range(1, m + 1)), Fraction(0))


def odd_harmonic(m: int) -> Fraction:
    """1 + 1/3 + ... + 1/(2m - 1), exactly."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return sum((Fraction(1, 2 * k - 1) for k in range(1, m + 1)), Fraction(0))


def digamma_half(n: int) -> GammaLogCombination:
    """psi(n/2) in closed form."""
    _check_dim(n)
    if n % 2 == 0:
        return GammaLogCombination(harmonic(n // 2 - 1), -1, 0)
    return GammaLogCombination(2 * odd_harmonic((n - 1) // 2), -1, -2)


def mean_log_coordinate(n: int) -> GammaLogCombination:
    """Mean of log|x_1| over the unit sphere S^{n-1} (uniform probability measure).

    Equal to (-2 log 2 - gamma - psi(n/2)) / 2; Euler's constant cancels.
    """
    half = Fraction(1, 2)
    return (-2 * LOG_2 - GAMMA - digamma_half(n)) * half


def xi_paper(n: int) -> GammaLogCombination:
    """Lower-bound constant exactly as printed in the source (n >= 2).

    Matches :func:`mean_log_coordinate` for odd n.  For even n the printed sum
    runs one term too far and the value is smaller by exactly 1/n.
    """
    _check_dim(n, 2)
    if n % 2 == 0:
        return -LOG_2 - harmonic(n // 2) * Fraction(1, 2)
    return GammaLogCombination(-odd_harmonic((n - 1) // 2))


# Float evaluation paths.  These use the same recurrences but accumulate in
# floating point, so they stay cheap for n in the millions where the exact
# rationals grow unwieldy.

@lru_cache(maxsize=4096)
def digamma_half_value(n: int) -> float:
    """psi(n/2) as a float, by the half-integer recurrence."""
    _check_dim(n)
    if n % 2 == 0:
        terms = [1.0 / i for i in range(1, n // 2)]
        return math.fsum([-EULER_GAMMA] + terms)
    terms = [2.0 / (2 * k - 1) for k in range(1, (n - 1) // 2 + 1)]
    return math.fsum([-EULER_GAMMA, -2.0 * LOG2] + terms)


def digamma_half_values(n_max: int):
    """Array ``out`` with ``out[n] = psi(n/2)`` for 1 <= n <= n_max (out[0] is nan).

    Runs the upward recurrence psi(n/2 + 1) = psi(n/2) + 2/n separately on
    the odd and even chains.
    """
    import numpy as np

    _check_dim(n_max)
    out = np.full(n_max + 1, np.nan)
    for start, base in ((1, -EULER_GAMMA - 2.0 * LOG2), (2, -EULER_GAMMA)):
        idx = np.arange(start, n_max + 1, 2)
        if idx.size == 0:
            continue
        steps = np.concatenate(([base], 2.0 / idx[:-1]))
        out[idx] = np.cumsum(steps)
    return out


def mean_log_coordinate_value(n: int) -> float:
    """Float value of :func:`mean_log_coordinate`, without building rationals."""
    _check_dim(n)
    if n % 2 == 0:
        return -LOG2 - 0.5 * math.fsum(1.0 / i for i in range(1, n // 2))
    return -math.fsum(1.0 / (2 * k - 1) for k in range(1, (n - 1) // 2 + 1))


def log_gamma_half(n: int) -> float:
    """log Gamma(n/2) via Gamma(x + 1) = x Gamma(x) from Gamma(1) or Gamma(1/2)."""
    _check_dim(n)
    if n % 2 == 0:
        return math.fsum(math.log(k) for k in range(1, n // 2))
    return math.fsum([0.5 * LOG_PI] + [math.log(k - 0.5) for k in range(1, (n - 1) // 2 + 1)])


def sphere_area(n: int) -> float:
    """Surface area of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2)."""
    return math.exp(LOG2 + 0.5 * n * LOG_PI - log_gamma_half(n))


def radial_moment(n: int) -> float:
    """Integral of r^{n-1} exp(-r^2/2) over r > 0, i.e. 2^{n/2-1} Gamma(n/2)."""
    return math.exp((0.5 * n - 1.0) * LOG2 + log_gamma_half(n))


def radial_log_moment(n: int) -> float:
    """Integral of log(r) r^{n-1} exp(-r^2/2) over r > 0.

    Equals 2^{n/2-2} Gamma(n/2) (log 2 + psi(n/2)).
    """
    return 0.5 * radial_moment(n) * (LOG2 + digamma_half_value(n))


def gaussian_log_radius_mean(n: int) -> float:
    """E log||g|| for a standard Gaussian vector g in R^n: (log 2 + psi(n/2)) / 2."""
    return 0.5 * (LOG2 + digamma_half_value(n))
