"""Exception hierarchy shared by every module of the package."""


class PointIntError(Exception):
    """Base class for all errors raised by :mod:`pointint`."""


class DomainError(PointIntError, ValueError):
    """A numeric argument lies outside the domain of the operation."""


class PreconditionError(PointIntError, ValueError):
    """Input data violates a structural precondition (shape, symmetry, distinctness)."""


class SingularityError(DomainError):
    """Evaluation point coincides with a singularity (an interaction center)."""


class InvariantError(PointIntError, RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
