from dataclasses import dataclass

from analytic_flow import messages
from core.exceptions import DomainError
from core.validators import require_finite


@dataclass(frozen=True)
class FlowParams:
    """
    Rates of the flow dM/dt = (a - b*kappa) n: advection rate `a` (distance/time, any sign) and curvature rate `b`
    (distance^2/time, b >= 0).
    """

    a: float
    b: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", require_finite("a", self.a))
        object.__setattr__(self, "b", require_finite("b", self.b))
        if self.b < 0.0:
            raise DomainError(messages.NEGATIVE_CURVATURE_RATE_ERROR_MESSAGE.format(b=self.b))

    @classmethod
    def from_prescribed_curvature(cls, kappa: float, b: float) -> "FlowParams":
        """Builds the rates of the equivalent flow dM/dt = b(kappa - kappa_mean) n, i.e. a = kappa * b."""

        return cls(a=require_finite("kappa", kappa) * b, b=b)

    @property
    def is_static(self) -> bool:
        return self.a == 0.0 and self.b == 0.0


@dataclass(frozen=True)
class SphereState:
    r0: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "r0", require_finite("r0", self.r0))
        if self.r0 <= 0.0:
            raise DomainError(messages.NON_POSITIVE_RADIUS_ERROR_MESSAGE.format(r0=self.r0))
