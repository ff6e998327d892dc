"""Exception types shared across the library."""


class DomainError(ValueError):
    """An argument lies outside the domain where the function is defined."""


class PoleError(DomainError):
    """A parameter sits on a pole of a gamma-type factor."""


class ConvergenceError(ArithmeticError):
    """A series or iteration failed to reach the requested accuracy."""


class IntegrandError(ArithmeticError):
    """The integrand returned a non-finite value."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location
