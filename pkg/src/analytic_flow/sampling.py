import math

import numpy as np

from analytic_flow import messages
from core.exceptions import DomainError
from core.validators import require_finite


# Fraction of a sampling interval under which t_end is considered already sampled
END_SAMPLE_SLACK = 1e-9


def sample_times(t_end: float, dt_sample: float) -> np.ndarray:
    """
    Returns 0, dt, 2dt, ... up to `t_end`, with `t_end` itself appended when it is not a multiple of dt.

    Times are formed as k*dt rather than by accumulation, so the same arguments always produce bit-identical times.
    """

    t_end = require_finite("t_end", t_end)
    dt_sample = require_finite("dt_sample", dt_sample)
    if t_end < 0.0:
        raise DomainError(messages.NEGATIVE_TIME_ERROR_MESSAGE.format(t=t_end))
    if dt_sample <= 0.0:
        raise DomainError(messages.NON_POSITIVE_SAMPLE_INTERVAL_ERROR_MESSAGE.format(dt=dt_sample))

    count = int(math.floor(t_end / dt_sample * (1.0 + END_SAMPLE_SLACK)))
    times = dt_sample * np.arange(count + 1, dtype=np.float64)
    times = times[times <= t_end]
    if t_end - times[-1] > END_SAMPLE_SLACK * dt_sample:
        times = np.append(times, t_end)
    return times
