"""Exception hierarchy shared by all pplane modules."""


class PPlaneError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PPlaneError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NoSolutionError(PPlaneError, ArithmeticError):
    """The requested equation has no solution in the admissible range."""


class FamilyMismatchError(PPlaneError, TypeError):
    """The operation is defined for a different hypothesis family."""
