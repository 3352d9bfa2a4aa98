"""Exception types raised across the package.

The CLI maps these onto exit codes: ``InvalidInputError`` -> 2,
``InstabilityError`` and ``NumericalFailureError`` -> 3.
"""


class DispgravError(Exception):
    """Base class for all package errors."""


class InvalidInputError(DispgravError, ValueError):
    """An argument violates an operation's precondition."""


class InstabilityError(DispgravError, ArithmeticError):
    """The coupled two-particle system has no stable ground state.

    Raised when the determinant on the imaginary axis is non-positive, which
    happens once the product of static polarizabilities reaches 1.
    """


class NumericalFailureError(DispgravError, RuntimeError):
    """A numerical procedure (quadrature, limit) failed to converge."""

    def __init__(self, message, operation=None, diagnostic=None):
        super().__init__(message)
        self.operation = operation
        self.diagnostic = diagnostic or {}
