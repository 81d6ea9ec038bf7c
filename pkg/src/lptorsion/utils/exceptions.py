class LpTorsionError(RuntimeError):
    """Base class for numerical failures raised by lptorsion."""


class UnsupportedDomainError(LpTorsionError, ValueError):
    """The requested quantity is not available for this domain type or backend."""


class ConvergenceError(LpTorsionError):
    """An iterative solver reached its iteration cap before meeting the tolerance."""


class RootFindingError(LpTorsionError):
    """A bracketing root finder could not locate a sign change."""


class GridTooCoarseError(LpTorsionError, ValueError):
    """The grid spacing does not resolve every component of the domain."""
