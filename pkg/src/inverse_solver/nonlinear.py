import logging

import numpy as np

from analytic_flow.domain import (
    FlowParams,
    RadiusTrajectory,
)
from inverse_solver import messages
from inverse_solver.exceptions import (
    ForwardModelError,
    NoConvergence,
)
from inverse_solver.forward import (
    DEFAULT_RELATIVE_STEP,
    finite_difference_jacobian,
    observed_samples,
    predicted_radii,
    radius_variation,
    regression_condition,
)
from inverse_solver.linear import dominant_term_warning
from inverse_solver.results import FitResult


logger = logging.getLogger(__name__)

MAX_ITERATIONS = 100
STEP_TOLERANCE = 1e-10
MIN_DAMPING = 1e-3
DAMPING_FACTOR = 10.0


def _as_params(x: np.ndarray) -> FlowParams:
    return FlowParams(float(x[0]), max(float(x[1]), 0.0))


def _sum_of_squares(x: np.ndarray, times: np.ndarray, radii: np.ndarray) -> float:
    try:
        predicted = predicted_radii(_as_params(x), float(radii[0]), times)
    except ForwardModelError:
        return float("inf")
    return float(np.sum((predicted - radii) ** 2))


def _damped_step(jacobian: np.ndarray, residual: np.ndarray, x: np.ndarray, damping: float) -> np.ndarray:
    """
    Solves (J^T J + damping * diag(J^T J)) delta = -J^T residual and returns x + delta kept inside b >= 0.

    When the step would leave the constraint, b is moved to 0 and the advection rate re-solved with b held there.
    """

    normal = jacobian.T @ jacobian
    gradient = jacobian.T @ residual
    lhs = normal + damping * np.diag(np.diag(normal))
    delta, *_ = np.linalg.lstsq(lhs, -gradient, rcond=None)
    candidate = x + delta
    if candidate[1] >= 0.0:
        return candidate

    delta_b = -x[1]
    advection_column = jacobian[:, 0]
    curvature = (advection_column @ advection_column) * (1.0 + damping)
    shifted = residual + jacobian[:, 1] * delta_b
    delta_a = -(advection_column @ shifted) / curvature if curvature > 0.0 else 0.0
    return np.array([x[0] + delta_a, 0.0])


def _fit_result(x: np.ndarray, objective: float, radii: np.ndarray, iterations: int, converged: bool) -> FitResult:
    condition = regression_condition(radii)
    return FitResult(
        params=_as_params(x),
        residual=float(np.sqrt(objective / radii.size)),
        condition=condition,
        dominant_term_warning=dominant_term_warning(condition, radius_variation(radii)),
        iterations=iterations,
        converged=converged,
    )


def fit_nonlinear(
    traj: RadiusTrajectory,
    init: FlowParams,
    relative_step: float = DEFAULT_RELATIVE_STEP,
    max_iterations: int = MAX_ITERATIONS,
) -> FitResult:
    """
    Refines `init` by minimising the squared radius misfit of the closed form started from the first sample.

    Gauss-Newton on a finite-difference Jacobian; a step that raises the objective is retried with Levenberg damping
    (x10, at least 1e-3), which is relaxed again after a successful step. Converged once a step moves the
    parameters by less than 1e-10 relative. Steps are projected onto b >= 0. Seeding with `fit_linear` makes the
    final residual no larger than the linear one.

    :raises InsufficientData: for fewer than four samples.
    :raises DomainError: if an observed radius is not positive.
    :raises NoConvergence: after `max_iterations`; the error carries the best estimate.
    :raises ForwardModelError: if the closed form fails at `init`.
    """

    times, radii = observed_samples(traj)
    r0 = float(radii[0])
    x = np.array([init.a, max(init.b, 0.0)], dtype=np.float64)
    objective = _sum_of_squares(x, times, radii)
    damping = 0.0
    jacobian = residual = None

    for iteration in range(1, max_iterations + 1):
        if jacobian is None:
            params = _as_params(x)
            jacobian = finite_difference_jacobian(times, r0, params, relative_step)
            residual = predicted_radii(params, r0, times) - radii

        candidate = _damped_step(jacobian, residual, x, damping)
        small_step = np.linalg.norm(candidate - x) <= STEP_TOLERANCE * np.linalg.norm(x)
        candidate_objective = _sum_of_squares(candidate, times, radii)

        if candidate_objective <= objective:
            x, objective = candidate, candidate_objective
            jacobian = None
            damping = damping / DAMPING_FACTOR if damping / DAMPING_FACTOR >= MIN_DAMPING else 0.0
        else:
            damping = max(damping * DAMPING_FACTOR, MIN_DAMPING)
            logger.debug(f"Iteration {iteration}: objective rose to {candidate_objective!r}, damping={damping!r}")

        if small_step:
            result = _fit_result(x, objective, radii, iteration, converged=True)
            logger.info(f"Nonlinear fit converged in {iteration} iterations: {result.params}")
            return result

    result = _fit_result(x, objective, radii, max_iterations, converged=False)
    message = messages.NO_CONVERGENCE_ERROR_MESSAGE.format(
        iterations=max_iterations, a=result.params.a, b=result.params.b
    )
    logger.warning(message)
    raise NoConvergence(message, result=result)
