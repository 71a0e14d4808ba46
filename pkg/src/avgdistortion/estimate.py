"""Estimators for the average distortion I(A) = mean of log||A u|| over the unit sphere.

Three routes are provided, all driven by the singular spectrum only:

* :func:`quad_estimate` -- deterministic.  With g standard Gaussian,
  ||A u|| averaged in log over the sphere equals E log||A g|| - E log||g||,
  and E log X - E log Y = int_0^inf (L_Y(t) - L_X(t)) / t dt for the Laplace
  transforms of X = sum sigma_i^2 g_i^2 and Y = sum g_i^2.
* :func:`mc_estimate` -- Monte Carlo, either on the sphere directly or on
  unnormalized Gaussian draws with the radial correction subtracted.
* :func:`closed_form` -- isotropic and rank-one spectra.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import quadrature
from .errors import AllSamplesSkipped
from .specfun import _check_dim, gaussian_log_radius_mean, mean_log_coordinate_value
from .spectrum import SingularSpectrum

_U53 = 2.0 ** -53
_CHUNK = 8192


class Method(str, enum.Enum):
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte_carlo"
    CLOSED_FORM = "closed_form"


class McMode(str, enum.Enum):
    PROJECTION = "projection"
    GAUSSIAN_REDUCTION = "reduction"


@dataclass(frozen=True)
class McConfig:
    samples: int = 100_000
    seed: int = 0
    mode: McMode = McMode.PROJECTION

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("need at least 2 samples for a standard error")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "mode", McMode(self.mode))


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-10
    max_subdivisions: int = 10**6

    def __post_init__(self):
        if not 0 < self.abs_tol <= 1e-2:
            raise ValueError("abs_tol must lie in (0, 1e-2]")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")


@dataclass(frozen=True)
class DistortionEstimate:
    value: float
    method: Method
    std_error: Optional[float] = None
    samples_used: Optional[int] = None
    skipped: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method.value,
            "std_error": self.std_error,
            "samples_used": self.samples_used,
            "skipped": self.skipped,
        }


# ---------------------------------------------------------------------------
# Counter-based sampling

def _philox_key(seed, n, attempt=0):
    return seed | (n << 64) | (attempt << 96)


def _gaussian_rows(n, start, count, seed, attempt=0):
    """Standard normal rows for sample indices start..start+count-1.

    Sample i always reads Philox counter blocks [i*B, (i+1)*B), so a row
    depends only on (n, i, seed, attempt), not on how samples are batched.
    """
    pairs = (n + 1) // 2
    blocks = (2 * pairs + 3) // 4
    bitgen = np.random.Philox(key=_philox_key(seed, n, attempt), counter=start * blocks)
    raw = bitgen.random_raw(count * blocks * 4).reshape(count, blocks * 4)[:, : 2 * pairs]
    u = ((raw >> np.uint64(11)).astype(float) + 0.5) * _U53
    radius = np.sqrt(-2.0 * np.log(u[:, 0::2]))
    angle = 2.0 * np.pi * u[:, 1::2]
    z = np.empty((count, 2 * pairs))
    z[:, 0::2] = radius * np.cos(angle)
    z[:, 1::2] = radius * np.sin(angle)
    return z[:, :n]


def _gaussian_rows_nonzero(n, start, count, seed):
    z = _gaussian_rows(n, start, count, seed)
    bad = ~np.any(z, axis=1)
    attempt = 0
    while np.any(bad):
        attempt += 1
        for row in np.flatnonzero(bad):
            z[row] = _gaussian_rows(n, start + row, 1, seed, attempt)[0]
        bad = ~np.any(z, axis=1)
    return z


def sample_sphere(n: int, sample_index: int, seed: int) -> np.ndarray:
    """Uniform point on S^{n-1}, fixed by (n, sample_index, seed)."""
    _check_dim(n)
    if sample_index < 0:
        raise ValueError("sample_index must be nonnegative")
    g = _gaussian_rows_nonzero(n, sample_index, 1, seed)[0]
    return g / np.linalg.norm(g)


def _log_norms(y):
    """Row-wise log of the Euclidean norm; -inf for zero rows."""
    m = np.max(np.abs(y), axis=1)
    out = np.full(y.shape[0], -np.inf)
    ok = m > 0
    scaled = y[ok] / m[ok, None]
    out[ok] = np.log(m[ok]) + 0.5 * np.log(np.einsum("ij,ij->i", scaled, scaled))
    return out


def mc_estimate(s: SingularSpectrum, cfg: McConfig = McConfig()) -> DistortionEstimate:
    n = s.dim
    sigma = s.as_array()
    values = np.empty(cfg.samples)
    for start in range(0, cfg.samples, _CHUNK):
        count = min(_CHUNK, cfg.samples - start)
        g = _gaussian_rows_nonzero(n, start, count, cfg.seed)
        image = _log_norms(g * sigma)
        if cfg.mode is McMode.PROJECTION:
            values[start:start + count] = image - _log_norms(g)
        else:
            values[start:start + count] = image
    kept = values[np.isfinite(values)]
    skipped = cfg.samples - kept.size
    if kept.size == 0:
        raise AllSamplesSkipped("every sample had zero image norm")
    mean = math.fsum(kept) / kept.size
    if cfg.mode is McMode.GAUSSIAN_REDUCTION:
        mean -= gaussian_log_radius_mean(n)
    std_error = float(np.std(kept, ddof=1) / math.sqrt(kept.size)) if kept.size > 1 else 0.0
    return DistortionEstimate(mean, Method.MONTE_CARLO, std_error, int(kept.size), int(skipped))


# ---------------------------------------------------------------------------
# Deterministic quadrature

def _laplace_gap(w, t):
    """(1 + 2t)^(-n/2) - prod_i (1 + 2 w_i^2 t)^(-1/2), elementwise in t."""
    n = w.size
    l1p = np.log1p(2.0 * np.multiply.outer(t, w * w))
    ly = -0.5 * n * np.log1p(2.0 * t)
    d = -0.5 * np.sum(l1p - np.log1p(2.0 * t)[:, None], axis=1)  # log L_X - log L_Y
    lx = ly + d
    below = -np.exp(ly) * np.expm1(np.minimum(d, 0.0))
    above = np.exp(lx) * np.expm1(np.minimum(-d, 0.0))
    return np.where(d <= 0.0, below, above)


def _left_cut(n, tol):
    # With sum w^2 = n both transforms have slope -n at 0, so
    # |gap(t)| <= 1.5 n^2 t^2 and the tail over log t < log t0 is <= 0.75 n^2 t0^2.
    return 0.5 * math.log(tol / (0.75 * n * n))


def _right_cut(w, tol):
    # (1 + 2 a t)^(-1/2) <= (2 a t)^(-1/2); integrating the product of the j
    # largest factors against dt/t from T gives (2T)^(-j/2) (2/j) / prod w_i.
    n = w.size
    best_y = -(2.0 / n) * math.log(tol * n / 2.0)
    best_x = math.inf
    log_prod = 0.0
    for j, wj in enumerate(w[w > 0], start=1):
        log_prod += math.log(wj)
        best_x = min(best_x, -(2.0 / j) * (math.log(tol * j / 2.0) + log_prod))
    return max(best_x, best_y) - math.log(2.0)


def quad_estimate(s: SingularSpectrum, cfg: QuadConfig = QuadConfig()) -> DistortionEstimate:
    """Deterministic I(s) to within ``cfg.abs_tol``.

    The spectrum is first rescaled so that sum sigma^2 = n (I shifts by the
    log of the scale), then half the Laplace-gap integral is computed over
    x = log t, where both tails decay exponentially.  The tails beyond the
    cut points are bounded analytically.
    """
    n = s.dim
    log_scale = 0.5 * (s.log_sum_sq() - math.log(n))
    w = s.as_array() / math.exp(log_scale)
    tail_tol = cfg.abs_tol / 20.0
    lo = _left_cut(n, tail_tol)
    hi = _right_cut(w, tail_tol)

    def integrand(x):
        return _laplace_gap(w, np.exp(x))

    # Result is halved, so the body may use the full tolerance less the tails.
    body, _, _ = quadrature.integrate(
        integrand,
        lo,
        hi,
        abs_tol=cfg.abs_tol - 4 * tail_tol,
        max_subdivisions=cfg.max_subdivisions,
        initial_pieces=min(16, cfg.max_subdivisions),
    )
    return DistortionEstimate(log_scale + 0.5 * body, Method.QUADRATURE)


def closed_form(s: SingularSpectrum) -> Optional[DistortionEstimate]:
    """Exact I for isotropic (log sigma) and rank-one (log sigma + E log|x_1|) spectra."""
    top = s.sigmas[0]
    if s.is_isotropic():
        return DistortionEstimate(math.log(top), Method.CLOSED_FORM)
    if s.is_rank_one():
        return DistortionEstimate(math.log(top) + mean_log_coordinate_value(s.dim), Method.CLOSED_FORM)
    return None
