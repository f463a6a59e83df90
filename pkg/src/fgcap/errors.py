"""Exception types shared across the package.

The CLI maps these onto exit codes: :class:`DomainError` -> 2 and
:class:`NumericalError` -> 3.
"""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class UnsupportedCaseError(DomainError):
    """A special-case formula was requested for a case it does not cover."""


class NumericalError(ArithmeticError):
    """A numerical procedure failed (non-convergence, broken invariant)."""


class ToleranceNotMet(NumericalError):
    """An iterative procedure hit its cap before reaching the tolerance.

    The best available estimate is kept on ``best``.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class NonRationalProductError(ArithmeticError):
    """Product of two values that both carry transcendental parts."""


class EvaluationError(NumericalError):
    """A user-supplied function returned NaN or infinity."""
