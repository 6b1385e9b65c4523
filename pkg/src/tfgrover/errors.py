"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the range an operation is defined on."""


class AmbiguityError(RuntimeError):
    """Eigenpair selection could not pick a unique principal pair."""


class ConvergenceError(ArithmeticError):
    """An iterative solver stopped without meeting its tolerance."""
