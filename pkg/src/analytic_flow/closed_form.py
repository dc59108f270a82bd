"""
Closed-form evolution of a sphere under dM/dt = (a - b*kappa) n.

By symmetry the surface stays a sphere and its radius obeys r' = a - b/r, r(0) = r0, whose solution is

    r(t) = (b/a) * (W_k[x0 * exp(x0) * exp(a^2 t / b)] + 1),    x0 = (a*r0 - b) / b,

with the secondary branch for a < 0 and the principal branch for a > 0. The pure advection (b = 0) and pure curvature
(a = 0) cases are dispatched exactly rather than as limits, because the general formula divides by a.
"""

import logging
import math
from typing import (
    Optional,
    Sequence,
)

import numpy as np

from analytic_flow import messages
from analytic_flow.domain import (
    FlowParams,
    FlowRegime,
    RadiusTrajectory,
    SphereState,
    VanishingTime,
)
from analytic_flow.exceptions import VanishedError
from core.exceptions import DomainError
from core.validators import require_finite
from lambert_w.branches import LambertBranch
from lambert_w.functions import (
    SERIES_START_WINDOW,
    lambert_w,
    lambert_w_near_branch_point,
    lambert_w_of_exp,
)


logger = logging.getLogger(__name__)

# Arguments rounded below -1/e by at most this much are treated as the branch point itself
BRANCH_POINT_CLAMP = 1e-12
# exp() of anything beyond these overflows or loses all digits, W is then evaluated in log space
MAX_LOG_ARGUMENT = 700.0
MIN_LOG_ARGUMENT = -700.0


def _require_time(t: float) -> float:
    t = require_finite("t", t)
    if t < 0.0:
        raise DomainError(messages.NEGATIVE_TIME_ERROR_MESSAGE.format(t=t))
    return t


def prescribed_curvature(params: FlowParams) -> float:
    """
    Returns the prescribed mean curvature a/b at which the flow is stationary.

    :raises DomainError: if b = 0.
    """

    if params.b == 0.0:
        raise DomainError(messages.PRESCRIBED_CURVATURE_UNDEFINED_ERROR_MESSAGE)
    return params.a / params.b


def meta_stable_radius(params: FlowParams) -> Optional[float]:
    """Radius b/a balancing growth against curvature shrinkage; only exists for a > 0 and b > 0."""

    if params.a > 0.0 and params.b > 0.0:
        return params.b / params.a
    return None


def classify_regime(params: FlowParams, r0: float) -> FlowRegime:
    """
    Classifies the long-time behaviour of a sphere of radius `r0`.

    The comparison of r0 with b/a is done as the sign of a*r0 - b, the same quantity the closed form is built on,
    without any tolerance band: a sphere one rounding error away from b/a is not meta-stable.

    :raises DomainError: for r0 <= 0 (b < 0 is rejected by FlowParams).
    """

    r0 = SphereState(r0).r0
    a, b = params.a, params.b

    if params.is_static:
        return FlowRegime.META_STABLE
    if a <= 0.0:
        return FlowRegime.SHRINK_TO_ZERO

    balance = a * r0 - b
    if balance < 0.0:
        return FlowRegime.SHRINK_TO_ZERO
    if balance == 0.0:
        return FlowRegime.META_STABLE
    return FlowRegime.GROW_UNBOUNDED


def _branch_point_offset(params: FlowParams, r0: float, t: float) -> float:
    """
    Returns e*z + 1 for the argument z of W, formed as 1 + (d - 1) exp(d + s) with d = a*r0/b and s = a^2 t/b.

    Slightly negative offsets (rounding below -1/e) are clamped to the branch point.

    :raises VanishedError: if the offset is clearly negative, i.e. t lies past the vanishing time.
    """

    a, b = params.a, params.b
    d = a * r0 / b
    growth = d + a * a * t / b
    if growth <= MAX_LOG_ARGUMENT:
        offset = -math.expm1(growth) + d * math.exp(growth)
        if offset >= 0.0:
            return offset
        if offset >= -math.e * BRANCH_POINT_CLAMP:
            return 0.0
    raise VanishedError(messages.VANISHED_ERROR_MESSAGE.format(a=params.a, b=params.b, r0=r0, t=t))


def radius_at(params: FlowParams, r0: float, t: float) -> float:
    """
    Evaluates the radius of the sphere at time `t`.

    :param params: Flow rates.
    :param r0: Initial radius, > 0.
    :param t: Time, >= 0.

    :return: The radius, >= 0 (exactly 0 at the vanishing time).

    :raises VanishedError: if `t` lies past the vanishing time.
    :raises DomainError: if a precondition fails.
    """

    r0 = SphereState(r0).r0
    t = _require_time(t)
    a, b = params.a, params.b

    if b == 0.0:
        radius = r0 + a * t
        if radius < 0.0:
            raise VanishedError(messages.VANISHED_ERROR_MESSAGE.format(a=a, b=b, r0=r0, t=t))
        return radius

    if a == 0.0:
        squared = r0 * r0 - 2.0 * b * t
        if squared < 0.0:
            raise VanishedError(messages.VANISHED_ERROR_MESSAGE.format(a=a, b=b, r0=r0, t=t))
        return math.sqrt(squared)

    x0 = (a * r0 - b) / b
    if x0 == 0.0:
        # W(0) = 0: the sphere sits on the meta-stable radius forever
        return r0

    branch = LambertBranch.PRINCIPAL if a > 0.0 else LambertBranch.SECONDARY
    log_argument = math.log(abs(x0)) + x0 + a * a * t / b
    if x0 > 0.0:
        # only reachable for a > 0: growth past the meta-stable radius
        if log_argument > MAX_LOG_ARGUMENT:
            w = lambert_w_of_exp(branch, log_argument)
        else:
            w = lambert_w(branch, math.exp(log_argument))
    elif a < 0.0 and log_argument < MIN_LOG_ARGUMENT:
        w = lambert_w_of_exp(branch, log_argument)
    else:
        offset = _branch_point_offset(params, r0, t)
        if offset < SERIES_START_WINDOW:
            w = lambert_w_near_branch_point(branch, offset)
        else:
            w = lambert_w(branch, -math.exp(log_argument))

    return max((b / a) * (w + 1.0), 0.0)


def vanishing_time(params: FlowParams, r0: float) -> VanishingTime:
    """
    Returns the time at which the radius reaches zero, or Never for spheres that stay or grow.

    The b = 0 and a = 0 branches are the limits of the general expression (b/a^2) ln(b/(b - a*r0)) - r0/a, which is
    evaluated through log1p to keep its digits for small a.

    :raises DomainError: for r0 <= 0 or the static flow a = b = 0.
    """

    r0 = SphereState(r0).r0
    a, b = params.a, params.b

    if params.is_static:
        raise DomainError(messages.STATIC_FLOW_VANISHING_ERROR_MESSAGE)

    if b == 0.0:
        return VanishingTime.finite(-r0 / a) if a < 0.0 else VanishingTime.never()

    if a == 0.0:
        return VanishingTime.finite(r0 * r0 / (2.0 * b))

    if a * r0 - b >= 0.0:
        return VanishingTime.never()

    u = a * r0 / b
    return VanishingTime.finite((b / (a * a)) * (-math.log1p(-u) - u))


def evolve_trajectory(params: FlowParams, r0: float, times: Sequence[float]) -> RadiusTrajectory:
    """
    Samples the closed form at the requested times.

    Unlike `radius_at`, times past the vanishing time are not an error here: their samples carry r = 0, matching
    the plotted solution curves.

    :param times: Strictly increasing times starting at 0.

    :raises DomainError: on invalid times or parameters.
    """

    r0 = SphereState(r0).r0
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1 or times.size == 0:
        raise DomainError(messages.EMPTY_TRAJECTORY_ERROR_MESSAGE)
    if times[0] != 0.0:
        raise DomainError(messages.TIMES_NOT_FROM_ZERO_ERROR_MESSAGE.format(t=float(times[0])))
    if np.any(np.diff(times) <= 0.0):
        raise DomainError(messages.TIMES_NOT_INCREASING_ERROR_MESSAGE)

    if params.is_static:
        return RadiusTrajectory(times=times, radii=np.full_like(times, r0))

    vanish = vanishing_time(params, r0)
    radii = np.empty_like(times)
    for index, t in enumerate(times):
        if t >= vanish.as_float():
            radii[index] = 0.0
            continue
        try:
            radii[index] = radius_at(params, r0, float(t))
        except VanishedError:
            # t is within rounding of the vanishing time
            radii[index] = 0.0

    return RadiusTrajectory(times=times, radii=radii, vanishing_time=vanish.time)
