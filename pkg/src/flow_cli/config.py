from dataclasses import dataclass
from typing import Optional

from django.db.models import TextChoices
from django.utils.translation import gettext_lazy as _

from analytic_flow.domain import FlowParams
from levelset_solver.domain import GridSpec


class RunCommand(TextChoices):
    ANALYTIC = "analytic", _("Closed-form radius trajectory")
    LEVELSET = "levelset", _("Level-set trajectory against the closed form")
    VANISH = "vanish", _("Vanishing time")
    INVERT = "invert", _("Rates fitted to a trajectory CSV")
    CONVERGENCE = "convergence", _("Level-set error over the grid ladder")
    PHASE = "phase", _("dr/dt against r")
    LAMBERT = "lambert", _("Both real branches of the Lambert W function")
    FAMILY = "family", _("Trajectories varying one rate")


class VariedRate(TextChoices):
    A = "a", _("Advection rate")
    B = "b", _("Curvature rate")


@dataclass(frozen=True)
class RunConfig:
    """A validated `flow` invocation."""

    command: RunCommand
    r0: float
    a: float
    b: float
    t_end: float
    dt_sample: float
    n: int
    extent: float
    samples: int
    zmax: float
    vary: VariedRate
    values: tuple[float, ...]
    r_max: Optional[float] = None
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    snapshot_path: Optional[str] = None
    slice_path: Optional[str] = None

    @property
    def params(self) -> FlowParams:
        return FlowParams(a=self.a, b=self.b)

    @property
    def grid(self) -> GridSpec:
        return GridSpec(n=self.n, extent=self.extent)
