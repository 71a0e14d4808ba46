"""Singular spectra and a one-sided (Hestenes) Jacobi SVD."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidMatrix, InvalidSpectrum, NoConvergence, ZeroMatrix

MAX_SWEEPS = 30
DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class SingularSpectrum:
    """Singular values sorted in non-increasing order, largest strictly positive.

    Build instances with :func:`spectrum_from_values` or :func:`singular_values`;
    the constructor only validates.
    """

    sigmas: tuple

    def __post_init__(self):
        sig = tuple(float(v) for v in self.sigmas)
        if not sig:
            raise InvalidSpectrum("empty spectrum", index=0)
        for i, v in enumerate(sig):
            if not math.isfinite(v) or v < 0:
                raise InvalidSpectrum(f"singular value {i} is {v!r}", index=i)
        for i in range(1, len(sig)):
            if sig[i] > sig[i - 1]:
                raise InvalidSpectrum(f"singular values not sorted at index {i}", index=i)
        if sig[0] <= 0:
            raise InvalidSpectrum("largest singular value must be positive", index=0)
        object.__setattr__(self, "sigmas", sig)
        if not math.isfinite(self.log_sum_sq()):
            raise InvalidSpectrum("sum of squares is not finite and positive", index=0)

    @property
    def dim(self) -> int:
        return len(self.sigmas)

    def __len__(self):
        return len(self.sigmas)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.sigmas, dtype=float)

    def squared(self) -> np.ndarray:
        return self.as_array() ** 2

    def sum_sq(self) -> float:
        return math.fsum(v * v for v in self.sigmas)

    def log_sum_sq(self) -> float:
        """log(sum sigma_i^2), scaled by the largest value so it never overflows."""
        top = self.sigmas[0]
        return 2.0 * math.log(top) + math.log(math.fsum((v / top) ** 2 for v in self.sigmas))

    def nonzero_count(self) -> int:
        return sum(1 for v in self.sigmas if v > 0)

    def is_isotropic(self) -> bool:
        return all(v == self.sigmas[0] for v in self.sigmas)

    def is_rank_one(self) -> bool:
        return self.nonzero_count() == 1

    def scaled(self, c: float) -> "SingularSpectrum":
        if not c > 0:
            raise ValueError("scale factor must be positive")
        return SingularSpectrum(tuple(c * v for v in self.sigmas))


def spectrum_from_values(values: Sequence[float]) -> SingularSpectrum:
    """Validate and sort arbitrary nonnegative values into a spectrum."""
    vals = [float(v) for v in values]
    if not vals:
        raise InvalidSpectrum("empty spectrum", index=0)
    for i, v in enumerate(vals):
        if not math.isfinite(v) or v < 0:
            raise InvalidSpectrum(f"value at index {i} is {v!r}; need finite and >= 0", index=i)
    if max(vals) <= 0:
        raise InvalidSpectrum("at least one value must be positive", index=0)
    return SingularSpectrum(tuple(sorted(vals, reverse=True)))


def _as_square(m) -> np.ndarray:
    a = np.array(m, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise InvalidMatrix(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidMatrix("matrix has non-finite entries")
    return a


def singular_values(m, tol: float = DEFAULT_TOL) -> SingularSpectrum:
    """Singular values of a square matrix by cyclic one-sided Jacobi.

    Columns are rotated pairwise until every pair is orthogonal to within
    ``tol`` relative to the product of their norms; the singular values are
    then the column norms.
    """
    if not 0 < tol <= 1e-4:
        raise ValueError("tol must lie in (0, 1e-4]")
    a = _as_square(m)
    if not np.any(a):
        raise ZeroMatrix()
    # Columns are rotated in place; scaling keeps squared norms in range.
    scale = np.max(np.abs(a))
    a /= scale
    n = a.shape[1]
    for _ in range(MAX_SWEEPS):
        rotated = False
        for i in range(n - 1):
            ai = a[:, i]
            for j in range(i + 1, n):
                aj = a[:, j]
                alpha = ai @ ai
                beta = aj @ aj
                gamma = ai @ aj
                if abs(gamma) <= tol * math.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                new_i = c * ai - s * aj
                a[:, j] = s * ai + c * aj
                a[:, i] = new_i
                ai = a[:, i]
        if not rotated:
            norms = np.sqrt(np.einsum("ij,ij->j", a, a)) * scale
            return spectrum_from_values(norms)
    raise NoConvergence(f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")
