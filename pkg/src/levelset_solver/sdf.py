import logging
from typing import Sequence

import numpy as np

from analytic_flow.domain import SphereState
from core.exceptions import DomainError
from core.validators import require_finite
from levelset_solver import messages
from levelset_solver.domain import (
    GridSpec,
    LevelSetField,
)


logger = logging.getLogger(__name__)

# Smallest radius, in cells, whose curvature the central differences still resolve
MIN_RESOLUTION_CELLS = 4


def init_sphere_sdf(spec: GridSpec, center: Sequence[float], r0: float, growth_margin: float = 0.0) -> LevelSetField:
    """
    Builds the exact signed distance phi(x) = |x - center| - r0 of a sphere.

    :param growth_margin: How far the surface is expected to move outwards; the grown sphere must still fit.

    :raises DomainError: if the (grown) sphere leaves the domain or r0 is below `MIN_RESOLUTION_CELLS` cells.
    """

    r0 = SphereState(r0).r0
    growth_margin = max(require_finite("growth_margin", growth_margin), 0.0)
    center = tuple(require_finite("center", c) for c in np.ravel(center))
    if len(center) != 3:
        raise DomainError(messages.CENTER_SHAPE_ERROR_MESSAGE.format(center=center))

    h = spec.spacing
    if r0 < MIN_RESOLUTION_CELLS * h:
        raise DomainError(messages.SPHERE_UNDER_RESOLVED_ERROR_MESSAGE.format(r0=r0, cells=MIN_RESOLUTION_CELLS, h=h))
    if max(abs(c) for c in center) + r0 + growth_margin >= spec.extent:
        raise DomainError(
            messages.SPHERE_DOES_NOT_FIT_ERROR_MESSAGE.format(
                r0=r0, margin=growth_margin, center=center, extent=spec.extent
            )
        )

    x, y, z = np.meshgrid(spec.axis(), spec.axis(), spec.axis(), indexing="ij")
    values = np.sqrt((x - center[0]) ** 2 + (y - center[1]) ** 2 + (z - center[2]) ** 2) - r0
    logger.debug(f"Initialized a sphere of radius {r0!r} on a {spec.n}^3 grid with h={h!r}")
    return LevelSetField(spec=spec, values=values, center=center)
