"""
The closed form seen as a model r(t; a, b) of an observed trajectory, with its finite-difference Jacobian.
"""

import numpy as np

from analytic_flow.closed_form import evolve_trajectory
from analytic_flow.domain import (
    FlowParams,
    RadiusTrajectory,
)
from core.exceptions import (
    DomainError,
    FlowError,
)
from inverse_solver import messages
from inverse_solver.exceptions import (
    ForwardModelError,
    InsufficientData,
)


MIN_SAMPLES = 4
DEFAULT_RELATIVE_STEP = 1e-6


def observed_samples(traj: RadiusTrajectory) -> tuple[np.ndarray, np.ndarray]:
    """
    Returns the trajectory's times shifted to start at 0 and its radii, checked for fitting.

    :raises InsufficientData: for fewer than four samples.
    :raises DomainError: if a radius is not positive.
    """

    if len(traj) < MIN_SAMPLES:
        raise InsufficientData(messages.INSUFFICIENT_DATA_ERROR_MESSAGE.format(minimum=MIN_SAMPLES, count=len(traj)))
    if np.any(traj.radii <= 0.0):
        raise DomainError(messages.NON_POSITIVE_OBSERVED_RADIUS_ERROR_MESSAGE)
    return traj.times - traj.times[0], traj.radii


def predicted_radii(params: FlowParams, r0: float, times: np.ndarray) -> np.ndarray:
    """
    Closed-form radii at `times` (starting at 0), zero past the vanishing time.

    :raises ForwardModelError: if the closed form cannot be evaluated for `params`.
    """

    try:
        return evolve_trajectory(params, r0, times).radii
    except FlowError as error:
        raise ForwardModelError(
            messages.FORWARD_MODEL_ERROR_MESSAGE.format(a=params.a, b=params.b, error=error)
        ) from error


def rms_misfit(params: FlowParams, times: np.ndarray, radii: np.ndarray) -> float:
    """RMS of the closed-form radius misfit started from the first observed radius, infinite if it cannot run."""

    try:
        predicted = predicted_radii(params, float(radii[0]), times)
    except ForwardModelError:
        return float("inf")
    return float(np.sqrt(np.mean((predicted - radii) ** 2)))


def _parameter_step(value: float, relative_step: float) -> float:
    return relative_step * max(abs(value), 1.0)


def finite_difference_jacobian(
    times: np.ndarray,
    r0: float,
    params: FlowParams,
    relative_step: float = DEFAULT_RELATIVE_STEP,
) -> np.ndarray:
    """
    Returns the (len(times), 2) matrix of dr/da and dr/db at `params`.

    Central differences with a step of `relative_step * max(|p|, 1)`; forward differences in b when the backward
    point would leave b >= 0.

    :raises DomainError: for a non-positive step.
    :raises ForwardModelError: if a perturbed evaluation fails.
    """

    if not relative_step > 0.0:
        raise DomainError(messages.NON_POSITIVE_RELATIVE_STEP_ERROR_MESSAGE.format(step=relative_step))

    times = np.asarray(times, dtype=np.float64)
    jacobian = np.empty((times.size, 2))

    step_a = _parameter_step(params.a, relative_step)
    ahead = predicted_radii(FlowParams(params.a + step_a, params.b), r0, times)
    behind = predicted_radii(FlowParams(params.a - step_a, params.b), r0, times)
    jacobian[:, 0] = (ahead - behind) / (2.0 * step_a)

    step_b = _parameter_step(params.b, relative_step)
    ahead = predicted_radii(FlowParams(params.a, params.b + step_b), r0, times)
    if params.b >= step_b:
        behind = predicted_radii(FlowParams(params.a, params.b - step_b), r0, times)
        jacobian[:, 1] = (ahead - behind) / (2.0 * step_b)
    else:
        jacobian[:, 1] = (ahead - predicted_radii(params, r0, times)) / step_b

    return jacobian


def regression_condition(radii: np.ndarray) -> float:
    """Condition number of the normal matrix of the regression r' = a*1 - b*(1/r) on `radii`."""

    design = np.column_stack((np.ones_like(radii), -1.0 / radii))
    return float(np.linalg.cond(design.T @ design))


def radius_variation(radii: np.ndarray) -> float:
    """Spread of the observed radii relative to the largest one."""

    return float((radii.max() - radii.min()) / radii.max())
