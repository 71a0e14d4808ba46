"""Average log-distortion of linear maps over the unit sphere."""

__version__ = "0.1.0"

from .bounds import BoundsReport, bound_gap, distortion_bounds  # noqa: E402
from .errors import (  # noqa: E402
    AllSamplesSkipped,
    DistortionError,
    InvalidMatrix,
    InvalidPrefix,
    InvalidSpectrum,
    NoConvergence,
    ToleranceNotReached,
    ZeroMatrix,
)
from .estimate import (  # noqa: E402
    DistortionEstimate,
    McConfig,
    McMode,
    Method,
    QuadConfig,
    closed_form,
    mc_estimate,
    quad_estimate,
    sample_sphere,
)
from .lln import LlnDiagnostics, condition_number, lln_ratio, lln_scan  # noqa: E402
from .specfun import GammaLogCombination, digamma_half, mean_log_coordinate, xi_paper  # noqa: E402
from .spectrum import SingularSpectrum, singular_values, spectrum_from_values  # noqa: E402
