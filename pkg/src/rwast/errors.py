"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the operation is defined."""


class ConvergenceError(ArithmeticError):
    """A series or quadrature failed to reach its tolerance within its cap."""
