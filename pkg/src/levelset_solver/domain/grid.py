from dataclasses import dataclass
from typing import Sequence

import numpy as np

from core.exceptions import DomainError
from core.validators import require_finite
from levelset_solver import messages


MIN_CELLS = 8


@dataclass(frozen=True)
class GridSpec:
    """
    Cube grid of `n` cells per axis covering [-extent, extent]^3.

    Nodes sit at cell centers, x_i = (i + 1/2 - n/2) h, so the node set is mapped onto itself exactly by the 48
    symmetries of the cube about the origin.
    """

    n: int
    extent: float

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < MIN_CELLS:
            raise DomainError(messages.GRID_TOO_SMALL_ERROR_MESSAGE.format(minimum=MIN_CELLS, n=self.n))
        extent = require_finite("extent", self.extent)
        if extent <= 0.0:
            raise DomainError(messages.NON_POSITIVE_EXTENT_ERROR_MESSAGE.format(extent=extent))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "extent", extent)

    @property
    def spacing(self) -> float:
        return 2.0 * self.extent / self.n

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.n, self.n, self.n

    def axis(self) -> np.ndarray:
        """Node coordinates along one axis."""

        return (np.arange(2 * self.n, step=2, dtype=np.float64) + 1.0 - self.n) / 2.0 * self.spacing

    def nearest_index(self, point: Sequence[float]) -> tuple[int, int, int]:
        """Index of the node closest to `point`, clipped to the grid."""

        offsets = np.floor((np.asarray(point, dtype=np.float64) + self.extent) / self.spacing).astype(int)
        return tuple(int(i) for i in np.clip(offsets, 0, self.n - 1))


@dataclass(frozen=True, eq=False)
class LevelSetField:
    """
    Scalar field phi on a `GridSpec`, negative inside the surface and positive outside.

    With this sign convention grad(phi)/|grad(phi)| is the outward unit normal. `values` is stored read-only;
    operations on a field always return a new one.
    """

    spec: GridSpec
    values: np.ndarray
    center: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        if values.shape != self.spec.shape:
            raise DomainError(messages.FIELD_SHAPE_ERROR_MESSAGE.format(expected=self.spec.shape, shape=values.shape))
        if not np.all(np.isfinite(values)):
            raise DomainError(messages.NON_FINITE_FIELD_ERROR_MESSAGE)

        center = tuple(float(c) for c in np.ravel(self.center))
        if len(center) != 3:
            raise DomainError(messages.CENTER_SHAPE_ERROR_MESSAGE.format(center=self.center))

        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "center", center)

    @property
    def spacing(self) -> float:
        return self.spec.spacing

    def with_values(self, values: np.ndarray) -> "LevelSetField":
        return LevelSetField(spec=self.spec, values=values, center=self.center)
