"""Law-of-large-numbers diagnostics for prefix spectra of a sequence.

For a sequence sigma_1, sigma_2, ... the deviation

    delta_n = I(diag(sigma_1..sigma_n)) - (1/2) log sum sigma_i^2 + (1/2) log n

tends to 0 when the ratio sum sigma^4 / (sum sigma^2)^2 does; uniformly
bounded condition numbers are a sufficient condition.  A finite scan cannot
certify a limit, so the scan only reports the numbers and hypothesis flags.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidPrefix
from .estimate import QuadConfig, quad_estimate
from .spectrum import SingularSpectrum, spectrum_from_values


def lln_ratio(s: SingularSpectrum) -> float:
    top = s.sigmas[0]
    sq = [(v / top) ** 2 for v in s.sigmas]
    return math.fsum(q * q for q in sq) / math.fsum(sq) ** 2


def condition_number(s: SingularSpectrum) -> float:
    """sigma_max / sigma_min, or ``math.inf`` if the spectrum is singular."""
    low = s.sigmas[-1]
    return math.inf if low == 0 else s.sigmas[0] / low


@dataclass
class LlnDiagnostics:
    dims: list = field(default_factory=list)
    ratios: list = field(default_factory=list)
    deviations: list = field(default_factory=list)
    condition_numbers: list = field(default_factory=list)

    def hypothesis_flags(self) -> dict:
        r = self.ratios
        return {
            "ratios_strictly_decreasing": all(b < a for a, b in zip(r, r[1:])),
            "ratio_times_n": [ri * n for ri, n in zip(r, self.dims)],
            "final_ratio": r[-1] if r else None,
            "max_condition_number": max(self.condition_numbers) if self.condition_numbers else None,
            "abs_deviation_decreasing": all(
                abs(b) < abs(a) for a, b in zip(self.deviations, self.deviations[1:])
            ),
        }

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "ratios": list(self.ratios),
            "deviations": list(self.deviations),
            "condition_numbers": [c if math.isfinite(c) else "inf" for c in self.condition_numbers],
            "hypothesis": self.hypothesis_flags(),
        }


def prefix_spectrum(sigma_sequence: Sequence[float], n: int) -> SingularSpectrum:
    prefix = [float(v) for v in sigma_sequence[:n]]
    if len(prefix) < n:
        raise InvalidPrefix(f"sequence has {len(sigma_sequence)} entries, need {n}", index=len(prefix))
    for i, v in enumerate(prefix):
        if not (math.isfinite(v) and v > 0):
            raise InvalidPrefix(f"entry {i} is {v!r}; sequence must be positive", index=i)
    return spectrum_from_values(prefix)


def lln_scan(sigma_sequence: Sequence[float], dims: Sequence[int],
             quad: QuadConfig = QuadConfig()) -> LlnDiagnostics:
    dims = [int(d) for d in dims]
    if not dims:
        raise ValueError("dims must be nonempty")
    if any(d < 2 for d in dims) or any(b <= a for a, b in zip(dims, dims[1:])):
        raise ValueError("dims must be strictly increasing and each >= 2")
    out = LlnDiagnostics()
    for n in dims:
        s = prefix_spectrum(sigma_sequence, n)
        value = quad_estimate(s, quad).value
        out.dims.append(n)
        out.ratios.append(lln_ratio(s))
        out.condition_numbers.append(condition_number(s))
        out.deviations.append(value - 0.5 * s.log_sum_sq() + 0.5 * math.log(n))
    return out
