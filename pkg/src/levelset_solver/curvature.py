"""
Mean curvature of the level sets of phi.

Curvatures follow the convention kappa = 1/r on a sphere, i.e. half the divergence of the unit normal
grad(phi)/|grad(phi)|, which in 3D sums the two principal curvatures. Dropping the factor 1/2 would double the
effective b of every flow.
"""

from typing import (
    Optional,
    Sequence,
)

import numpy as np

from core.exceptions import DomainError
from levelset_solver import messages
from levelset_solver.differences import (
    CentralDerivatives,
    central_derivatives,
)
from levelset_solver.domain import LevelSetField
from levelset_solver.exceptions import DegenerateGradient


MIN_GRADIENT_NORM = 1e-8
BOUNDARY_MARGIN = 2


def _divergence_numerator(derivatives: CentralDerivatives) -> np.ndarray:
    """|grad phi|^3 * div(grad phi / |grad phi|)."""

    (px, py, pz), (pxx, pyy, pzz), (pxy, pxz, pyz) = derivatives
    return (
        pxx * (py * py + pz * pz)
        + pyy * (px * px + pz * pz)
        + pzz * (px * px + py * py)
        - 2.0 * (px * py * pxy + px * pz * pxz + py * pz * pyz)
    )


def curvature_and_gradient(block: np.ndarray, h: float, clamp: Optional[float] = None) -> tuple[np.ndarray, np.ndarray]:
    """
    Returns kappa and |grad phi| on the interior of `block`.

    Where |grad phi| < `MIN_GRADIENT_NORM` the curvature is set to 0. With `clamp`, |kappa| is limited to it.
    """

    derivatives = central_derivatives(block, h)
    gradient_squared = derivatives.gradient_squared
    norm = np.sqrt(gradient_squared)
    degenerate = norm < MIN_GRADIENT_NORM

    denominator = np.where(degenerate, 1.0, gradient_squared * norm)
    kappa = np.where(degenerate, 0.0, 0.5 * _divergence_numerator(derivatives) / denominator)
    if clamp is not None:
        kappa = np.clip(kappa, -clamp, clamp)
    return kappa, norm


def mean_curvature(field: LevelSetField, index: Sequence[int]) -> float:
    """
    Evaluates kappa = div(grad phi / |grad phi|) / 2 at one node by central differences.

    :param index: (i, j, k), at least `BOUNDARY_MARGIN` cells from every face.

    :raises DomainError: if the index is too close to the boundary.
    :raises DegenerateGradient: if |grad phi| < `MIN_GRADIENT_NORM` there.
    """

    i, j, k = (int(value) for value in index)
    n = field.spec.n
    if min(i, j, k) < BOUNDARY_MARGIN or max(i, j, k) > n - 1 - BOUNDARY_MARGIN:
        raise DomainError(
            messages.INDEX_TOO_CLOSE_TO_BOUNDARY_ERROR_MESSAGE.format(margin=BOUNDARY_MARGIN, index=(i, j, k))
        )

    block = field.values[i - 1 : i + 2, j - 1 : j + 2, k - 1 : k + 2]
    derivatives = central_derivatives(block, field.spacing)
    norm = float(np.sqrt(derivatives.gradient_squared)[0, 0, 0])
    if norm < MIN_GRADIENT_NORM:
        raise DegenerateGradient(
            messages.DEGENERATE_GRADIENT_ERROR_MESSAGE.format(norm=norm, index=(i, j, k), minimum=MIN_GRADIENT_NORM)
        )
    return float(0.5 * _divergence_numerator(derivatives)[0, 0, 0] / norm**3)
