import math

import numpy as np

from levelset_solver import messages
from levelset_solver.curvature import MIN_GRADIENT_NORM
from levelset_solver.domain import LevelSetField
from levelset_solver.exceptions import EmptySurface


# Half-width of the smoothed Heaviside, in cells
HEAVISIDE_HALF_WIDTH = 1.5


def smoothed_heaviside(s: np.ndarray, epsilon: float) -> np.ndarray:
    """0 below -epsilon, 1 above epsilon, (1 + s/eps + sin(pi s/eps)/pi)/2 in between."""

    ratio = np.clip(np.asarray(s, dtype=np.float64) / epsilon, -1.0, 1.0)
    return 0.5 * (1.0 + ratio + np.sin(np.pi * ratio) / np.pi)


def distance_estimate(field: LevelSetField) -> np.ndarray:
    """
    phi / |grad phi|, the first-order distance to the zero level set.

    Equal to phi for a signed distance field. Evolved fields drift away from |grad phi| = 1 and the estimate keeps
    the smoothing band `HEAVISIDE_HALF_WIDTH` cells wide around the surface regardless.
    """

    gradient = np.gradient(field.values, field.spacing)
    norm = np.sqrt(sum(component * component for component in gradient))
    return field.values / np.maximum(norm, MIN_GRADIENT_NORM)


def enclosed_volume(field: LevelSetField) -> float:
    h = field.spacing
    return float(np.sum(smoothed_heaviside(-distance_estimate(field), HEAVISIDE_HALF_WIDTH * h)) * h**3)


def extract_radius(field: LevelSetField) -> float:
    """
    Radius of the sphere with the volume enclosed by the zero level set, r = (3V / 4pi)^(1/3).

    :raises EmptySurface: if phi > 0 everywhere.
    """

    if not np.any(field.values <= 0.0):
        raise EmptySurface(messages.EMPTY_SURFACE_ERROR_MESSAGE)
    return (3.0 * enclosed_volume(field) / (4.0 * math.pi)) ** (1.0 / 3.0)
