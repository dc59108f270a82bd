from typing import TYPE_CHECKING

from core.exceptions import (
    ConvergenceError,
    DomainError,
    FlowError,
)


if TYPE_CHECKING:
    from inverse_solver.results import FitResult


class InsufficientData(DomainError):
    """Fewer samples than the fit needs."""


class DegenerateData(FlowError):
    """
    The data cannot separate a from b (a constant trajectory); `result` holds the minimum-norm estimate, flagged.
    """

    def __init__(self, message: str, result: "FitResult") -> None:
        super().__init__(message)
        self.result = result


class NoConvergence(ConvergenceError):
    """The nonlinear fit ran out of iterations; `result` holds the best estimate seen, flagged as not converged."""

    def __init__(self, message: str, result: "FitResult") -> None:
        super().__init__(message)
        self.result = result


class ForwardModelError(FlowError):
    """The closed form could not be evaluated for a trial (a, b)."""
