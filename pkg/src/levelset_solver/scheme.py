"""
Explicit time stepping of phi_t + (a - b*kappa)|grad phi| = 0.

Forward Euler throughout. Pure advection uses first-order Godunov upwinding on the sign of a, pure curvature flow
central differences. With both rates the speed F = a - b*kappa is upwinded as a whole on its sign with limited
second-order one-sided differences, so that the two terms share one |grad phi| and cancel where F = 0. Faces are
copied from the nearest interior layer (homogeneous Neumann).
"""

import logging
import math
from concurrent.futures import (
    Executor,
    ThreadPoolExecutor,
)
from typing import Optional

import numpy as np
from django.conf import settings

from analytic_flow.domain import FlowParams
from core.exceptions import DomainError
from core.validators import require_finite
from levelset_solver import messages
from levelset_solver.curvature import curvature_and_gradient
from levelset_solver.differences import (
    AXES,
    OneSidedDifferences,
    limited_one_sided_differences,
    one_sided_differences,
    shifted,
)
from levelset_solver.domain import LevelSetField
from levelset_solver.exceptions import CFLViolation


logger = logging.getLogger(__name__)

# Returned by cfl_dt when neither term moves the surface
NO_MOTION = math.inf
# The curvature term acts as diffusion with coefficient up to 2b in the divergence form
DIFFUSION_FACTOR = 2.0
STENCIL_NEIGHBOURS = 6
# Cells of halo around every slab
HALO = 2


def cfl_dt(field: LevelSetField, params: FlowParams, safety: float) -> float:
    """
    Returns the largest stable step, safety / (|a|/h + 6 * 2b / h^2).

    :raises DomainError: if `safety` is not in (0, 1].
    """

    safety = require_finite("safety", safety)
    if not 0.0 < safety <= 1.0:
        raise DomainError(messages.SAFETY_RANGE_ERROR_MESSAGE.format(safety=safety))

    h = field.spacing
    rate = abs(params.a) / h + STENCIL_NEIGHBOURS * DIFFUSION_FACTOR * params.b / (h * h)
    if rate == 0.0:
        return NO_MOTION
    return safety / rate


def godunov_gradient(differences: OneSidedDifferences, a: float) -> np.ndarray:
    """
    Upwind |grad phi| for the outward speed `a`.

    For a > 0 information travels outwards, so backward differences are taken where they are positive and forward
    ones where they are negative; the roles swap for a < 0.
    """

    total = 0.0
    for axis in AXES:
        backward, forward = differences.backward[axis], differences.forward[axis]
        if a > 0.0:
            upwind = np.maximum(np.maximum(backward, 0.0) ** 2, np.minimum(forward, 0.0) ** 2)
        else:
            upwind = np.maximum(np.minimum(backward, 0.0) ** 2, np.maximum(forward, 0.0) ** 2)
        total = total + upwind
    return np.sqrt(total)


def _advance_block(block: np.ndarray, h: float, params: FlowParams, dt: float) -> np.ndarray:
    inner = block[1:-1, 1:-1, 1:-1]
    centre = shifted(inner, (0, 0, 0))
    if params.b == 0.0:
        rate = -params.a * godunov_gradient(one_sided_differences(inner, h), params.a)
        return centre + dt * rate

    kappa, norm = curvature_and_gradient(inner, h, clamp=1.0 / h)
    if params.a == 0.0:
        return centre + dt * params.b * kappa * norm

    speed = params.a - params.b * kappa
    differences = limited_one_sided_differences(block, h)
    outward, inward = godunov_gradient(differences, 1.0), godunov_gradient(differences, -1.0)
    rate = -(np.maximum(speed, 0.0) * outward + np.minimum(speed, 0.0) * inward)
    return centre + dt * rate


def _slabs(n: int, workers: int) -> list[tuple[int, int]]:
    """Splits the interior rows 1..n-2 along the first axis into at most `workers` contiguous slabs."""

    bounds = np.linspace(1, n - 1, min(workers, n - 2) + 1).round().astype(int)
    return [(int(start), int(stop)) for start, stop in zip(bounds[:-1], bounds[1:]) if stop > start]


def _copy_faces(values: np.ndarray) -> None:
    for axis in AXES:
        first, second, last, before_last = ([slice(None)] * 3 for _ in range(4))
        first[axis], second[axis], last[axis], before_last[axis] = 0, 1, -1, -2
        values[tuple(first)] = values[tuple(second)]
        values[tuple(last)] = values[tuple(before_last)]


def step(
    field: LevelSetField,
    params: FlowParams,
    dt: float,
    workers: Optional[int] = None,
    executor: Optional[Executor] = None,
) -> LevelSetField:
    """
    Advances the field by one forward Euler step of size `dt`.

    Every slab reads the previous field only, so slabs are independent and run on `workers` threads
    (`LEVELSET_WORKERS` by default). A caller stepping many times passes its own `executor`, which is then used
    instead of a pool per step.

    :raises CFLViolation: if dt exceeds `cfl_dt(field, params, 1.0)`.
    :raises DomainError: if dt <= 0.
    """

    dt = require_finite("dt", dt)
    if dt <= 0.0:
        raise DomainError(messages.NON_POSITIVE_STEP_ERROR_MESSAGE.format(dt=dt))
    limit = cfl_dt(field, params, 1.0)
    if dt > limit:
        raise CFLViolation(messages.CFL_VIOLATION_ERROR_MESSAGE.format(dt=dt, limit=limit))

    if params.is_static:
        return field.with_values(field.values)

    workers = settings.LEVELSET_WORKERS if workers is None else workers
    h = field.spacing
    # Padded row p holds original row p - 1; edge copies match the Neumann faces
    padded = np.pad(field.values, HALO - 1, mode="edge")
    values = field.values.copy()

    def advance(slab: tuple[int, int]) -> np.ndarray:
        start, stop = slab
        return _advance_block(padded[start - 1 : stop + HALO + 1], h, params, dt)

    slabs = _slabs(field.spec.n, max(int(workers), 1))
    if len(slabs) == 1:
        updates = [advance(slabs[0])]
    elif executor is not None:
        updates = list(executor.map(advance, slabs))
    else:
        with ThreadPoolExecutor(max_workers=len(slabs)) as pool:
            updates = list(pool.map(advance, slabs))

    for (start, stop), update in zip(slabs, updates):
        values[start:stop, 1:-1, 1:-1] = update
    _copy_faces(values)

    return field.with_values(values)
