"""
Second-order finite differences on the cells of a 3D block that have a full layer of neighbours.

Every function takes a block padded by one cell on each side and returns arrays shaped like
`block[1:-1, 1:-1, 1:-1]`.
"""

from typing import NamedTuple

import numpy as np


AXES = (0, 1, 2)
AXIS_PAIRS = ((0, 1), (0, 2), (1, 2))


def shifted(block: np.ndarray, offsets: tuple[int, int, int]) -> np.ndarray:
    """The interior of `block` moved by `offsets` cells."""

    return block[tuple(slice(1 + offset, size - 1 + offset) for offset, size in zip(offsets, block.shape))]


def _unit(axis: int, offset: int) -> tuple[int, int, int]:
    offsets = [0, 0, 0]
    offsets[axis] = offset
    return offsets[0], offsets[1], offsets[2]


class OneSidedDifferences(NamedTuple):
    backward: tuple[np.ndarray, np.ndarray, np.ndarray]
    forward: tuple[np.ndarray, np.ndarray, np.ndarray]


class CentralDerivatives(NamedTuple):
    first: tuple[np.ndarray, np.ndarray, np.ndarray]
    second: tuple[np.ndarray, np.ndarray, np.ndarray]
    # xy, xz, yz
    mixed: tuple[np.ndarray, np.ndarray, np.ndarray]

    @property
    def gradient_squared(self) -> np.ndarray:
        x, y, z = self.first
        return x * x + y * y + z * z


def one_sided_differences(block: np.ndarray, h: float) -> OneSidedDifferences:
    """D-(phi) = (phi_i - phi_i-1)/h and D+(phi) = (phi_i+1 - phi_i)/h along each axis."""

    centre = shifted(block, (0, 0, 0))
    backward = tuple((centre - shifted(block, _unit(axis, -1))) / h for axis in AXES)
    forward = tuple((shifted(block, _unit(axis, 1)) - centre) / h for axis in AXES)
    return OneSidedDifferences(backward=backward, forward=forward)


def central_derivatives(block: np.ndarray, h: float) -> CentralDerivatives:
    """First, second and mixed derivatives from the 3x3x3 stencil."""

    centre = shifted(block, (0, 0, 0))
    first, second = [], []
    for axis in AXES:
        ahead, behind = shifted(block, _unit(axis, 1)), shifted(block, _unit(axis, -1))
        first.append((ahead - behind) / (2.0 * h))
        second.append((ahead - 2.0 * centre + behind) / (h * h))

    mixed = []
    for axis, other in AXIS_PAIRS:
        corners = {}
        for da in (-1, 1):
            for db in (-1, 1):
                offsets = [0, 0, 0]
                offsets[axis], offsets[other] = da, db
                corners[da, db] = shifted(block, (offsets[0], offsets[1], offsets[2]))
        mixed.append((corners[1, 1] - corners[1, -1] - corners[-1, 1] + corners[-1, -1]) / (4.0 * h * h))

    return CentralDerivatives(first=tuple(first), second=tuple(second), mixed=tuple(mixed))


def minmod(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """The argument of smaller magnitude where both have the same sign, 0 elsewhere."""

    smaller = np.where(np.abs(first) <= np.abs(second), first, second)
    return np.where(first * second > 0.0, smaller, 0.0)


def limited_one_sided_differences(block: np.ndarray, h: float) -> OneSidedDifferences:
    """
    Second-order one-sided differences on a block padded by two cells.

    D-(phi) + h/2 * minmod(D2 phi_i-1, D2 phi_i) and D+(phi) - h/2 * minmod(D2 phi_i, D2 phi_i+1), exact for
    quadratics. The result is shaped like `block[2:-2, 2:-2, 2:-2]`.
    """

    first = one_sided_differences(block[1:-1, 1:-1, 1:-1], h)
    centre = shifted(block, (0, 0, 0))
    backward, forward = [], []
    for axis in AXES:
        second = (shifted(block, _unit(axis, 1)) - 2.0 * centre + shifted(block, _unit(axis, -1))) / (h * h)
        behind, here, ahead = (shifted(second, _unit(axis, offset)) for offset in (-1, 0, 1))
        backward.append(first.backward[axis] + 0.5 * h * minmod(behind, here))
        forward.append(first.forward[axis] - 0.5 * h * minmod(here, ahead))
    return OneSidedDifferences(backward=tuple(backward), forward=tuple(forward))
