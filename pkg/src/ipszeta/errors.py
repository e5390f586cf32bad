"""Exception types raised by the package."""


class IpsZetaError(Exception):
    """Base class for all library errors."""


class ConstraintViolation(IpsZetaError):
    """A local operator carries weight where the right site would change."""


class DomainError(IpsZetaError):
    """A parameter lies outside its admissible range."""


class DimensionMismatch(IpsZetaError):
    """A vector or matrix has the wrong shape for the operation."""


class SizeExceeded(IpsZetaError):
    """The requested dense computation is above the configured site cap."""


class ConvergenceFailure(IpsZetaError):
    """The eigensolver exhausted its iteration budget."""


class SingularAtU(IpsZetaError):
    """The series or closed form has a pole at the requested point."""


class KindMismatch(IpsZetaError):
    """State kind and operator class are incompatible."""


class InvariantDrift(IpsZetaError):
    """A state invariant degraded past the accepted numerical drift."""
