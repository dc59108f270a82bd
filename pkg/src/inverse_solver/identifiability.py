import numpy as np

from analytic_flow.closed_form import vanishing_time
from analytic_flow.domain import (
    FlowParams,
    SphereState,
)
from core.exceptions import DomainError
from core.validators import require_finite
from inverse_solver import messages
from inverse_solver.forward import finite_difference_jacobian
from inverse_solver.results import IdentifiabilityReport


SENSITIVITY_SAMPLES = 200


def identifiability_report(params: FlowParams, r0: float, t_end: float) -> IdentifiabilityReport:
    """
    Compares how strongly each rate shapes the trajectory over [0, t_end].

    The relative sensitivities ||a dr/da|| and ||b dr/db|| are taken over 200 evenly spaced times; a ratio above
    1e3 means the weaker rate is effectively invisible in data of this kind.

    :raises DomainError: unless 0 < t_end < vanishing time.
    """

    r0 = SphereState(r0).r0
    t_end = require_finite("t_end", t_end)
    if t_end <= 0.0:
        raise DomainError(messages.NON_POSITIVE_HORIZON_ERROR_MESSAGE.format(t_end=t_end))
    if not params.is_static:
        vanish = vanishing_time(params, r0)
        if t_end >= vanish.as_float():
            raise DomainError(
                messages.HORIZON_PAST_VANISHING_ERROR_MESSAGE.format(t_end=t_end, vanishing_time=vanish.time)
            )

    times = np.linspace(0.0, t_end, SENSITIVITY_SAMPLES)
    jacobian = finite_difference_jacobian(times, r0, params)
    return IdentifiabilityReport(
        sensitivity_a=float(np.linalg.norm(params.a * jacobian[:, 0])),
        sensitivity_b=float(np.linalg.norm(params.b * jacobian[:, 1])),
    )
