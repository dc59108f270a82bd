import math
from dataclasses import dataclass
from typing import (
    NamedTuple,
    Optional,
)

from analytic_flow.domain import FlowParams


# Sensitivity ratio above which the weaker rate cannot be trusted
NON_DOMINANT_RISK_RATIO = 1e3


@dataclass(frozen=True)
class FitResult:
    """
    Estimated rates with the diagnostics needed to judge them.

    `residual` is the RMS radius misfit of the closed form at `params`, `condition` the condition number of the
    normal matrix of the regression r' = a - b/r (>= 1, infinite for degenerate data).
    """

    params: FlowParams
    residual: float
    condition: float
    dominant_term_warning: bool
    iterations: int = 0
    converged: bool = True


class IdentifiabilityReport(NamedTuple):
    """Relative sensitivities ||a dr/da|| and ||b dr/db|| of a trajectory."""

    sensitivity_a: float
    sensitivity_b: float

    @property
    def ratio(self) -> float:
        weaker, stronger = sorted((self.sensitivity_a, self.sensitivity_b))
        if weaker == 0.0:
            return math.inf
        return stronger / weaker

    @property
    def non_dominant_risk(self) -> bool:
        return self.ratio > NON_DOMINANT_RISK_RATIO

    @property
    def dominant_term(self) -> Optional[str]:
        if self.sensitivity_a == self.sensitivity_b:
            return None
        return "a" if self.sensitivity_a > self.sensitivity_b else "b"
