import logging

import numpy as np

from analytic_flow.domain import (
    FlowParams,
    RadiusTrajectory,
)
from inverse_solver import messages
from inverse_solver.exceptions import DegenerateData
from inverse_solver.forward import (
    observed_samples,
    radius_variation,
    regression_condition,
    rms_misfit,
)
from inverse_solver.results import FitResult


logger = logging.getLogger(__name__)

MAX_CONDITION = 1e6
MIN_RADIUS_VARIATION = 0.01


def dominant_term_warning(condition: float, variation: float) -> bool:
    """True when the data cannot be trusted to separate advection from curvature."""

    warn = condition > MAX_CONDITION or variation < MIN_RADIUS_VARIATION
    if warn:
        logger.warning(messages.DOMINANT_TERM_WARNING_MESSAGE.format(condition=condition, variation=variation))
    return warn


def fit_linear(traj: RadiusTrajectory) -> FitResult:
    """
    Estimates (a, b) by linear least squares on r' = a*1 - b*(1/r).

    Radius derivatives come from second-order differences (one-sided at the ends). A negative curvature rate is
    projected onto b = 0 by refitting a alone, which is the constrained least-squares optimum.

    :raises InsufficientData: for fewer than four samples.
    :raises DomainError: if an observed radius is not positive.
    :raises DegenerateData: when every radius is equal; the error carries the minimum-norm fit.
    """

    times, radii = observed_samples(traj)
    rates = np.gradient(radii, times, edge_order=2)
    design = np.column_stack((np.ones_like(radii), -1.0 / radii))

    if np.all(radii == radii[0]):
        (a, b), *_ = np.linalg.lstsq(design, rates, rcond=None)
        params = FlowParams(float(a), max(float(b), 0.0))
        result = FitResult(
            params=params,
            residual=rms_misfit(params, times, radii),
            condition=float("inf"),
            dominant_term_warning=True,
        )
        message = messages.DEGENERATE_DATA_ERROR_MESSAGE.format(radius=float(radii[0]))
        logger.warning(message)
        raise DegenerateData(message, result=result)

    (a, b), *_ = np.linalg.lstsq(design, rates, rcond=None)
    if b < 0.0:
        logger.debug(f"Projecting b={b!r} onto the constraint b >= 0")
        a, b = float(np.mean(rates)), 0.0

    params = FlowParams(float(a), float(b))
    condition = regression_condition(radii)
    result = FitResult(
        params=params,
        residual=rms_misfit(params, times, radii),
        condition=condition,
        dominant_term_warning=dominant_term_warning(condition, radius_variation(radii)),
    )
    logger.info(f"Linear fit of {len(traj)} samples: {params}, residual={result.residual!r}")
    return result
