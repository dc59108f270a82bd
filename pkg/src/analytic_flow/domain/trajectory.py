from dataclasses import (
    dataclass,
    field,
)
from typing import (
    Iterable,
    Optional,
)

import numpy as np

from analytic_flow import messages
from core.exceptions import DomainError


@dataclass(frozen=True, eq=False)
class RadiusTrajectory:
    """
    Ordered (t, r) samples of a sphere radius.

    Produced by the closed form, the reference integrator and the level-set solver; consumed by the inverse solver
    and the CSV writers. `vanishing_time` is set by producers that observed the radius reaching zero.
    """

    times: np.ndarray
    radii: np.ndarray
    vanishing_time: Optional[float] = field(default=None)

    def __post_init__(self) -> None:
        times = np.array(self.times, dtype=np.float64)
        radii = np.array(self.radii, dtype=np.float64)

        if times.ndim != 1 or radii.shape != times.shape:
            raise DomainError(messages.TRAJECTORY_SHAPE_ERROR_MESSAGE)
        if times.size == 0:
            raise DomainError(messages.EMPTY_TRAJECTORY_ERROR_MESSAGE)
        if not np.all(np.isfinite(times)) or np.any(np.diff(times) <= 0.0):
            raise DomainError(messages.TIMES_NOT_INCREASING_ERROR_MESSAGE)
        if not np.all(np.isfinite(radii)) or np.any(radii < 0.0):
            raise DomainError(messages.NEGATIVE_RADIUS_SAMPLE_ERROR_MESSAGE)

        times.setflags(write=False)
        radii.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "radii", radii)

    @classmethod
    def from_samples(cls, samples: Iterable[tuple[float, float]], vanishing_time: Optional[float] = None):
        pairs = np.asarray(list(samples), dtype=np.float64).reshape(-1, 2)
        return cls(times=pairs[:, 0], radii=pairs[:, 1], vanishing_time=vanishing_time)

    @property
    def samples(self) -> list[tuple[float, float]]:
        return [(float(t), float(r)) for t, r in zip(self.times, self.radii)]

    @property
    def initial_radius(self) -> float:
        return float(self.radii[0])

    @property
    def final_radius(self) -> float:
        return float(self.radii[-1])

    def __len__(self) -> int:
        return int(self.times.size)
