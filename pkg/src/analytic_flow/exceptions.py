from typing import TYPE_CHECKING

from core.exceptions import (
    DomainError,
    FlowError,
)


if TYPE_CHECKING:
    from analytic_flow.domain import RadiusTrajectory


class VanishedError(DomainError):
    """The radius was requested past the time the sphere vanished."""


class StiffnessError(FlowError):
    """
    The reference integrator's step size underflowed before `t_end`.

    Expected when a shrinking sphere approaches its vanishing time; `trajectory` holds the accepted samples and
    `crossing_time` the extrapolated time at which the radius reaches zero.
    """

    def __init__(self, message: str, trajectory: "RadiusTrajectory", crossing_time: float) -> None:
        super().__init__(message)
        self.trajectory = trajectory
        self.crossing_time = crossing_time
