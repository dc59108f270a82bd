import math

from core import messages
from core.exceptions import NonFiniteInput


def require_finite(name: str, value: float) -> float:
    """
    Returns `value` as a float if it is a finite real number.

    :raises NonFiniteInput: for NaN or infinite values.
    """

    value = float(value)
    if not math.isfinite(value):
        raise NonFiniteInput(messages.NON_FINITE_VALUE_ERROR_MESSAGE.format(name=name, value=value))
    return value
