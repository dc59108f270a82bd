import logging
from concurrent.futures import (
    Executor,
    ThreadPoolExecutor,
)
from contextlib import nullcontext
from dataclasses import dataclass
from typing import (
    ContextManager,
    Optional,
    Sequence,
)

import numpy as np
from django.conf import settings

from analytic_flow.closed_form import (
    classify_regime,
    radius_at,
)
from analytic_flow.domain import (
    FlowParams,
    FlowRegime,
    RadiusTrajectory,
)
from analytic_flow.sampling import sample_times
from core.exceptions import DomainError
from core.validators import require_finite
from levelset_solver import messages
from levelset_solver.domain import (
    GridSpec,
    LevelSetField,
)
from levelset_solver.exceptions import DomainEscape
from levelset_solver.measure import extract_radius
from levelset_solver.scheme import (
    cfl_dt,
    step,
)
from levelset_solver.sdf import init_sphere_sdf


logger = logging.getLogger(__name__)

# The zero level set may not enter this many outer cell layers
BOUNDARY_LAYERS = 2


@dataclass(frozen=True, eq=False)
class LevelSetRun:
    trajectory: RadiusTrajectory
    field: LevelSetField
    steps: int


def _growth_margin(params: FlowParams, r0: float, t_end: float) -> float:
    if classify_regime(params, r0) != FlowRegime.GROW_UNBOUNDED:
        return 0.0
    return radius_at(params, r0, t_end) - r0


def _slab_pool(workers: int) -> ContextManager[Optional[Executor]]:
    return ThreadPoolExecutor(max_workers=workers) if workers > 1 else nullcontext()


def _check_boundary(field: LevelSetField, t: float) -> None:
    values = field.values
    for axis in range(3):
        near = np.take(values, range(BOUNDARY_LAYERS), axis=axis)
        far = np.take(values, range(values.shape[axis] - BOUNDARY_LAYERS, values.shape[axis]), axis=axis)
        if np.any(near <= 0.0) or np.any(far <= 0.0):
            raise DomainEscape(messages.DOMAIN_ESCAPE_ERROR_MESSAGE.format(layers=BOUNDARY_LAYERS, t=t))


def run_evolution(
    spec: GridSpec,
    center: Sequence[float],
    r0: float,
    params: FlowParams,
    t_end: float,
    sample_every: float,
    safety: Optional[float] = None,
    workers: Optional[int] = None,
) -> LevelSetRun:
    """
    Evolves the signed distance of a sphere and samples its radius at 0, every `sample_every` and `t_end`.

    Steps are `cfl_dt(safety)` long, shortened to land exactly on each sample time. The run stops early when the
    sphere vanishes; the time of the step that emptied it becomes the trajectory's `vanishing_time`.

    :param safety: CFL safety factor, `LEVELSET_CFL_SAFETY` by default.
    :param workers: Slab threads per step, `LEVELSET_WORKERS` by default. One pool serves the whole run.

    :raises DomainEscape: if the zero level set reaches the outer `BOUNDARY_LAYERS` layers.
    :raises DomainError: on invalid arguments, including a sphere that would outgrow the domain.
    """

    t_end = require_finite("t_end", t_end)
    if t_end < 0.0:
        raise DomainError(messages.NEGATIVE_END_TIME_ERROR_MESSAGE.format(t_end=t_end))
    safety = settings.LEVELSET_CFL_SAFETY if safety is None else safety
    workers = max(int(settings.LEVELSET_WORKERS if workers is None else workers), 1)
    samples = sample_times(t_end, sample_every)

    field = init_sphere_sdf(spec, center, r0, growth_margin=_growth_margin(params, r0, t_end))
    stable_dt = cfl_dt(field, params, safety)
    logger.info(f"Evolving r0={r0!r} with a={params.a!r}, b={params.b!r} on {spec.n}^3 up to t={t_end!r}")

    t, steps = 0.0, 0
    times, radii = [0.0], [extract_radius(field)]
    with _slab_pool(workers) as executor:
        for target in samples[1:]:
            target = float(target)
            while t < target:
                remaining = target - t
                dt = min(stable_dt, remaining)
                field = step(field, params, dt, workers=workers, executor=executor)
                steps += 1
                t = target if dt == remaining else t + dt
                _check_boundary(field, t)

                if not np.any(field.values <= 0.0):
                    logger.info(f"Sphere vanished at t={t!r} after {steps} steps")
                    times.append(t)
                    radii.append(0.0)
                    trajectory = RadiusTrajectory(times=times, radii=radii, vanishing_time=t)
                    return LevelSetRun(trajectory=trajectory, field=field, steps=steps)

            times.append(target)
            radii.append(extract_radius(field))
            logger.debug(f"t={target!r}: r={radii[-1]!r} after {steps} steps")

    logger.info(f"Level-set run finished at t={t_end!r} with r={radii[-1]!r} after {steps} steps")
    return LevelSetRun(trajectory=RadiusTrajectory(times=times, radii=radii), field=field, steps=steps)


def evolve(
    spec: GridSpec,
    center: Sequence[float],
    r0: float,
    params: FlowParams,
    t_end: float,
    sample_every: float,
) -> RadiusTrajectory:
    """Radius trajectory of `run_evolution` with the configured safety factor and workers."""

    return run_evolution(spec, center, r0, params, t_end, sample_every).trajectory
