"""Exception hierarchy shared by every module in the package."""


class AbarError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AbarError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class InputError(AbarError, ValueError):
    """Malformed or insufficient input data (samples, files, configs)."""


class BracketError(AbarError, ValueError):
    """The root-finding bracket does not contain a sign change."""


class NumericalError(AbarError, ArithmeticError):
    """A numerical procedure failed to reach its accuracy target."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class QuadratureError(NumericalError):
    """Adaptive quadrature ran out of subdivisions.

    ``estimate`` and ``error`` hold the best integral value reached and its
    error bound at the moment the budget ran out.
    """


class RangeError(AbarError, OverflowError):
    """A result or intermediate exponent is not representable as a float."""
