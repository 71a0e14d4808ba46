"""Exception hierarchy shared by all modules."""


class DistortionError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpectrum(DistortionError, ValueError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class InvalidMatrix(DistortionError, ValueError):
    pass


class ZeroMatrix(InvalidSpectrum):
    """All matrix entries are zero, so the largest singular value vanishes."""

    def __init__(self, message="matrix is identically zero"):
        super().__init__(message, index=0)


class InvalidPrefix(InvalidSpectrum):
    pass


class NumericalFailure(DistortionError, ArithmeticError):
    """Raised when an iterative numerical method fails to deliver."""


class NoConvergence(NumericalFailure):
    pass


class ToleranceNotReached(NumericalFailure):
    pass


class AllSamplesSkipped(NumericalFailure):
    pass
