class FlowError(Exception):
    """
    Root of every error raised by the flow toolkit.

    Subclasses carry a human-readable message built from the owning app's `messages` module, so callers (the HTTP
    exception handler, the `flow` management command) can report `str(error)` without a stack trace.
    """


class DomainError(FlowError, ValueError):
    """An input lies outside the domain of the requested operation."""


class NonFiniteInput(DomainError):
    """A NaN or infinite number was passed where a finite real is required."""


class ConvergenceError(FlowError, ArithmeticError):
    """An iterative method exhausted its iteration budget."""
