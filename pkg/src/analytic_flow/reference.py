"""
Independent oracle for the closed form: adaptive step-doubling RK4 on r' = a - b/r.
"""

import logging
import math

from analytic_flow import messages
from analytic_flow.domain import (
    FlowParams,
    RadiusTrajectory,
    SphereState,
)
from analytic_flow.exceptions import StiffnessError
from core.exceptions import DomainError
from core.validators import require_finite


logger = logging.getLogger(__name__)

FLOOR_FACTOR = 10.0
MIN_STEP_FACTOR = 1e-14
MAX_GROWTH = 4.0
MIN_SHRINK = 0.2
SAFETY = 0.9
INITIAL_STEP = 1e-3


class _NonPositiveStage(ArithmeticError):
    pass


def _rk4(params: FlowParams, r: float, h: float) -> float:
    def rate(radius: float) -> float:
        if params.b != 0.0 and radius <= 0.0:
            raise _NonPositiveStage
        return params.a - params.b / radius if params.b != 0.0 else params.a

    k1 = rate(r)
    k2 = rate(r + 0.5 * h * k1)
    k3 = rate(r + 0.5 * h * k2)
    k4 = rate(r + h * k3)
    return r + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def reference_integrate(params: FlowParams, r0: float, t_end: float, tol: float) -> RadiusTrajectory:
    """
    Integrates r' = a - b/r from r(0) = r0 to `t_end` with step-doubling RK4.

    A step of size h is accepted when the difference between one full step and two half steps, divided by 15,
    is at most tol*h; the accepted value is the locally extrapolated two-half-step result. Integration halts
    cleanly once the radius falls below 10*tol, recording the crossing time as the last sample (radius 0) and as
    the trajectory's `vanishing_time`.

    :raises StiffnessError: if the step size underflows before `t_end` (near vanishing); the partial trajectory and
        the extrapolated crossing time travel with the error.
    :raises DomainError: on invalid arguments.
    """

    r0 = SphereState(r0).r0
    t_end = require_finite("t_end", t_end)
    tol = require_finite("tol", tol)
    if t_end < 0.0:
        raise DomainError(messages.NEGATIVE_TIME_ERROR_MESSAGE.format(t=t_end))
    if tol <= 0.0:
        raise DomainError(messages.NON_POSITIVE_TOLERANCE_ERROR_MESSAGE.format(tol=tol))

    floor = FLOOR_FACTOR * tol
    times, radii = [0.0], [r0]
    t, r = 0.0, r0
    h = min(INITIAL_STEP, t_end)

    while t < t_end:
        last_step = h >= t_end - t
        h = min(h, t_end - t)
        if h < MIN_STEP_FACTOR * max(1.0, t):
            rate = params.a - params.b / r if params.b != 0.0 else params.a
            crossing_time = t + r / (2.0 * abs(rate)) if rate < 0.0 else math.inf
            message = messages.STIFFNESS_ERROR_MESSAGE.format(t=t, r=r, crossing_time=crossing_time)
            logger.warning(message)
            raise StiffnessError(
                message,
                trajectory=RadiusTrajectory(times=times, radii=radii),
                crossing_time=crossing_time,
            )

        try:
            full = _rk4(params, r, h)
            half = _rk4(params, _rk4(params, r, 0.5 * h), 0.5 * h)
        except _NonPositiveStage:
            h *= 0.5
            continue

        error = abs(half - full) / 15.0
        if error > tol * h:
            h *= max(MIN_SHRINK, SAFETY * (tol * h / error) ** 0.25)
            continue

        r_next = half + (half - full) / 15.0
        if r_next < floor:
            crossing_time = t + h * (r - floor) / (r - r_next)
            if crossing_time > t:
                times.append(crossing_time)
                radii.append(0.0)
            else:
                radii[-1] = 0.0
            logger.debug(f"Radius fell below {floor!r} at t={crossing_time!r}")
            return RadiusTrajectory(times=times, radii=radii, vanishing_time=crossing_time)

        t = t_end if last_step else t + h
        r = r_next
        times.append(t)
        radii.append(r)
        growth = MAX_GROWTH if error == 0.0 else min(MAX_GROWTH, SAFETY * (tol * h / error) ** 0.25)
        h *= growth

    logger.debug(f"Reference integration reached t={t_end!r} in {len(times) - 1} steps")
    return RadiusTrajectory(times=times, radii=radii)
