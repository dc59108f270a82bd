"""
Real-valued Lambert W: the solutions w of w * exp(w) = z on the branches W_0 and W_-1.

Halley iteration from branch-specific starting points; within 1e-6 of the branch point -1/e the square-root series
is returned directly because the derivative of w * exp(w) vanishes there.
"""

import logging
import math

from core.validators import require_finite
from lambert_w import messages
from lambert_w.branches import LambertBranch
from lambert_w.exceptions import (
    LambertConvergenceError,
    LambertDomainError,
)


logger = logging.getLogger(__name__)

# -1/e split into the nearest double and the remainder, so e*z + 1 keeps its digits as z -> -1/e
BRANCH_POINT = -0.36787944117144233
BRANCH_POINT_TAIL = 1.2428753672788363e-17

MAX_ITERATIONS = 50
RESIDUAL_TOLERANCE = 1e-12
# Halley converges cubically, once a step is this small the remaining error is at round-off level
STEP_TOLERANCE = 1e-10
BRANCH_POINT_WINDOW = 1e-6
# Threshold on e*z + 1 below which the branch-point series is a better start than the logarithms
SERIES_START_WINDOW = 0.5
NEWTON_LOG_STEP_TOLERANCE = 1e-14


def _distance_to_branch_point(z: float) -> float:
    """Returns e*z + 1, zero at the branch point."""

    return max(math.e * ((z - BRANCH_POINT) - BRANCH_POINT_TAIL), 0.0)


def _branch_point_series(branch: LambertBranch, q: float, terms: int = 5) -> float:
    """Series of W around -1/e in p = +-sqrt(2(e*z + 1)), positive root for the principal branch."""

    p = math.sqrt(2.0 * q)
    if branch == LambertBranch.SECONDARY:
        p = -p
    coefficients = (-1.0, 1.0, -1.0 / 3.0, 11.0 / 72.0, -43.0 / 540.0)
    return sum(c * p**power for power, c in enumerate(coefficients[:terms]))


def _check_domain(branch: LambertBranch, z: float) -> None:
    if z < BRANCH_POINT:
        if branch == LambertBranch.PRINCIPAL:
            raise LambertDomainError(messages.PRINCIPAL_DOMAIN_ERROR_MESSAGE.format(z=z))
        raise LambertDomainError(messages.SECONDARY_DOMAIN_ERROR_MESSAGE.format(z=z))
    if branch == LambertBranch.SECONDARY and z >= 0.0:
        raise LambertDomainError(messages.SECONDARY_DOMAIN_ERROR_MESSAGE.format(z=z))


def _initial_guess(branch: LambertBranch, z: float, q: float) -> float:
    if q < SERIES_START_WINDOW:
        return _branch_point_series(branch, q, terms=4)
    if branch == LambertBranch.PRINCIPAL:
        if z < 3.0:
            return math.log1p(z)
        log_z = math.log(z)
        log_log_z = math.log(log_z)
        return log_z - log_log_z + log_log_z / log_z

    log_z = math.log(-z)
    log_log_z = math.log(-log_z)
    return log_z - log_log_z + log_log_z / log_z


def _halley(branch: LambertBranch, z: float, w: float) -> float:
    tolerance = RESIDUAL_TOLERANCE * max(1.0, abs(z))
    for iteration in range(1, MAX_ITERATIONS + 1):
        exp_w = math.exp(w)
        f = w * exp_w - z
        w_plus_one = w + 1.0
        step = f / (exp_w * w_plus_one - (w + 2.0) * f / (2.0 * w_plus_one))
        w -= step

        if abs(step) <= STEP_TOLERANCE * (1.0 + abs(w)) and abs(w * math.exp(w) - z) <= tolerance:
            logger.debug(f"W_{branch.value}({z!r}) converged to {w!r} after {iteration} Halley iterations")
            return w

    raise LambertConvergenceError(
        messages.CONVERGENCE_ERROR_MESSAGE.format(branch=branch.value, z=z, iterations=MAX_ITERATIONS, w=w)
    )


def lambert_w(branch: LambertBranch, z: float) -> float:
    """
    Evaluates the real Lambert W function on the given branch.

    :param branch: `LambertBranch.PRINCIPAL` (w >= -1) or `LambertBranch.SECONDARY` (w <= -1).
    :param z: Argument; z >= -1/e on the principal branch, -1/e <= z < 0 on the secondary branch.

    :return: w with |w * exp(w) - z| <= 1e-12 * max(1, |z|).

    :raises NonFiniteInput: if z is NaN or infinite.
    :raises LambertDomainError: if z is outside the branch domain.
    :raises LambertConvergenceError: if Halley iteration does not converge in `MAX_ITERATIONS` steps.
    """

    branch = LambertBranch(branch)
    z = require_finite("z", z)
    _check_domain(branch, z)

    if z == 0.0:
        return 0.0

    q = _distance_to_branch_point(z)
    if z - BRANCH_POINT <= BRANCH_POINT_WINDOW:
        return _branch_point_series(branch, q)

    return _halley(branch, z, _initial_guess(branch, z, q))


def lambert_w_near_branch_point(branch: LambertBranch, offset: float) -> float:
    """
    Evaluates W_k(z) given the offset e*z + 1 >= 0 instead of z itself.

    Callers that can form the offset without cancellation (for instance through expm1) keep the digits that are lost
    when z is rounded next to -1/e; W depends on the offset through its square root there.

    :raises LambertDomainError: if the offset is negative or, on the secondary branch, 1 or more.
    """

    branch = LambertBranch(branch)
    offset = require_finite("offset", offset)
    if offset < 0.0 or (branch == LambertBranch.SECONDARY and offset >= 1.0):
        raise LambertDomainError(messages.OFFSET_DOMAIN_ERROR_MESSAGE.format(branch=branch.value, offset=offset))

    if offset <= math.e * BRANCH_POINT_WINDOW:
        return _branch_point_series(branch, offset)
    return lambert_w(branch, (offset - 1.0) / math.e)


def lambert_w_of_exp(branch: LambertBranch, log_magnitude: float) -> float:
    """
    Evaluates W_k(+exp(L)) on the principal branch or W_k(-exp(L)) on the secondary branch.

    Solves w + ln|w| = L by Newton's method so that arguments beyond the range of a double (growth far past the
    meta-stable radius, or secondary-branch arguments smaller than exp(-700)) never have to be formed.

    :param branch: Branch to evaluate; the sign of the argument follows from it.
    :param log_magnitude: L = ln|z|.

    :raises LambertDomainError: on the secondary branch when L > -1 (|z| > 1/e).
    """

    branch = LambertBranch(branch)
    log_magnitude = require_finite("log_magnitude", log_magnitude)

    if branch == LambertBranch.PRINCIPAL:
        if log_magnitude <= 1.0:
            return lambert_w(branch, math.exp(log_magnitude))
        log_l = math.log(log_magnitude)
        w = log_magnitude - log_l + log_l / log_magnitude
    else:
        if log_magnitude > -1.0:
            raise LambertDomainError(messages.SECONDARY_LOG_DOMAIN_ERROR_MESSAGE.format(log_magnitude=log_magnitude))
        if log_magnitude > -700.0:
            return lambert_w(branch, -math.exp(log_magnitude))
        log_l = math.log(-log_magnitude)
        w = log_magnitude - log_l + log_l / log_magnitude

    for iteration in range(1, MAX_ITERATIONS + 1):
        step = (w + math.log(abs(w)) - log_magnitude) / (1.0 + 1.0 / w)
        w -= step
        if abs(step) <= NEWTON_LOG_STEP_TOLERANCE * (1.0 + abs(w)):
            logger.debug(f"W_{branch.value}(exp({log_magnitude!r})) converged in log space after {iteration} steps")
            return w

    raise LambertConvergenceError(
        messages.CONVERGENCE_ERROR_MESSAGE.format(
            branch=branch.value, z=f"exp({log_magnitude!r})", iterations=MAX_ITERATIONS, w=w
        )
    )
