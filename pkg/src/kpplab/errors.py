"""Exception hierarchy.

Split along the CLI's exit-code contract: validation failures (exit 1),
numerical failures (exit 2) and bad input (exit 3).
"""


class KppLabError(Exception):
    """Base class for all package errors."""


class BadInputError(KppLabError):
    """Malformed user input: unparsable flags, broken table files, bad parameter combinations."""


class ValidationError(KppLabError):
    """A reaction term failed the structural checks (positivity / strictly decreasing ratio)."""


class InvalidNonlinearityError(ValidationError):
    """A reaction term violated the strict slope inequality f(u) > m*u on (0, p)."""


class NumericalError(KppLabError):
    """Base for failures of the numerical machinery itself."""


class DomainError(NumericalError):
    """The reaction term was evaluated outside its extended domain."""


class IntegrationFailureError(NumericalError):
    """Adaptive step size underflowed or the step budget was exhausted."""


class NoRootError(NumericalError):
    """A first root was requested from a profile that has none."""


class NoPositiveSolutionError(NumericalError):
    """No center value in (0, 1) brackets the requested ball radius."""


class ConvergenceFailureError(NumericalError):
    """Bisection stalled before reaching the requested residual."""


class EstimationError(NumericalError):
    """The small-z limit of f(z)/z could not be resolved."""


class StabilityError(NumericalError):
    """Explicit time step violates the diffusion stability bound."""


class DomainTooSmallError(NumericalError):
    """The truncated spatial domain is too small: the field is not negligible at the walls."""


class BoxViolationError(NumericalError):
    """A field value left [0, 1] by more than the monitoring tolerance."""


class ResourceLimitError(NumericalError):
    """A particle population exceeded the configured cap."""


class GridMismatchError(NumericalError):
    """Two profiles cannot be compared on a common grid."""
