"""Exception types raised across the package."""


class ThetaFrameError(Exception):
    """Base class for all package errors."""


class SingularMatrix(ThetaFrameError, ValueError):
    pass


class DiscriminantMismatch(ThetaFrameError, ValueError):
    pass


class NonPositiveParameter(ThetaFrameError, ValueError):
    """A parameter that must lie in [1e-6, 1e6] (or be > 0) does not."""


class TruncationOverflow(ThetaFrameError, RuntimeError):
    """The certified summation radius would exceed the hard cap."""


class DensityMismatch(ThetaFrameError, ValueError):
    """Lattice volume is not 1/(2n) for the requested redundancy index."""


class GridTooCoarse(ThetaFrameError, ValueError):
    pass


class ConvergenceFailure(ThetaFrameError, RuntimeError):
    pass


class QuadratureNotConverged(ThetaFrameError, RuntimeError):
    pass


class HypothesisViolated(UserWarning):
    """Shear minimisation ran outside the range where the minimiser is known."""
