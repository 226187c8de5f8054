"""Sharp frame bounds of Gaussian Gabor frames on lattices of even density."""
__version__ = "0.1.0"

from .errors import (  # noqa: F401
    ConvergenceFailure,
    DensityMismatch,
    DiscriminantMismatch,
    GridTooCoarse,
    HypothesisViolated,
    NonPositiveParameter,
    QuadratureNotConverged,
    SingularMatrix,
    TruncationOverflow,
)
from .framebounds import (  # noqa: F401
    FrameBoundReport,
    GaborConfig,
    closed_form_square_red2,
    hexagonal_red2_bounds,
    report,
    upper_bound_ambiguity_route,
    upper_bound_even,
    upper_bound_theta_route,
)
from .kernels import BACKEND  # noqa: F401
from .lattice import (  # noqa: F401
    HEXAGONAL_FORM,
    Lattice2D,
    QuadraticForm,
    forms_equivalent,
    from_matrix,
    hexagonal,
    quadratic_form,
    reduce_form,
    square,
)
from .theta import TruncationSpec, cubic_theta, jacobi_theta, lattice_theta  # noqa: F401
