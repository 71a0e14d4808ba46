"""Sphere integrals of log-homogeneous functions via Gaussian integrals.

If f(a x) = g(a) + f(x) for a > 0, integrating f against exp(-|x|^2/2) in
polar coordinates splits into a sphere part and a radial part:

    radial_moment(n) * S(f) = G(f) - area(S^{n-1}) * R(g)

where S(f) is the (unnormalized) sphere integral, G(f) the Gaussian-weighted
integral over R^n and R(g) the radial integral of g(r) r^{n-1} e^{-r^2/2}.
The functions here take the integral values, not f and g themselves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .specfun import _check_dim, gaussian_log_radius_mean, radial_moment, sphere_area


@dataclass(frozen=True)
class LogHomogeneousPair:
    gaussian_integral: float
    radial_g_integral: float
    dim: int

    def __post_init__(self):
        _check_dim(self.dim)
        if not (math.isfinite(self.gaussian_integral) and math.isfinite(self.radial_g_integral)):
            raise ValueError("integrals must be finite")


def sphere_integral_from_gaussian(pair: LogHomogeneousPair) -> float:
    """Total integral of f over S^{n-1} (not normalized by the area)."""
    n = pair.dim
    return (pair.gaussian_integral - sphere_area(n) * pair.radial_g_integral) / radial_moment(n)


def sphere_mean_log_from_gaussian_mean(gaussian_mean: float, n: int) -> float:
    """Sphere mean of f from the Gaussian mean E f(g), for the case g(r) = log r."""
    return gaussian_mean - gaussian_log_radius_mean(n)
