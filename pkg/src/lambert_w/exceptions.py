from core.exceptions import (
    ConvergenceError,
    DomainError,
)


class LambertDomainError(DomainError):
    """The argument has no real solution on the requested branch."""


class LambertConvergenceError(ConvergenceError):
    """Halley (or log-space Newton) iteration did not reach the residual tolerance."""
