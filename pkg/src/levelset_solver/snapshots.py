"""
Field exports: a flat little-endian binary snapshot and a CSV slice through the center plane.

Snapshot layout: float64 n, extent, cx, cy, cz; int64 count = n^3; then count float64 values of phi[i, j, k] with k
varying fastest.
"""

import logging
from pathlib import Path
from typing import (
    IO,
    Union,
)

import numpy as np

from core.formatting import write_csv
from levelset_solver import messages
from levelset_solver.domain import (
    GridSpec,
    LevelSetField,
)
from levelset_solver.exceptions import SnapshotFormatError


logger = logging.getLogger(__name__)

HEADER_FLOATS = np.dtype("<f8")
HEADER_COUNT = np.dtype("<i8")
HEADER_SIZE = 5 * HEADER_FLOATS.itemsize + HEADER_COUNT.itemsize


def write_snapshot(field: LevelSetField, path: Union[str, Path]) -> None:
    spec = field.spec
    header = np.array([spec.n, spec.extent, *field.center], dtype=HEADER_FLOATS)
    count = np.array([field.values.size], dtype=HEADER_COUNT)
    with open(path, "wb") as stream:
        stream.write(header.tobytes())
        stream.write(count.tobytes())
        stream.write(np.ascontiguousarray(field.values, dtype=HEADER_FLOATS).tobytes())
    logger.debug(f"Wrote a {spec.n}^3 snapshot to {path}")


def read_snapshot(path: Union[str, Path]) -> LevelSetField:
    """
    Reads a snapshot written by `write_snapshot`.

    :raises SnapshotFormatError: if the file is truncated or its header is inconsistent.
    """

    data = Path(path).read_bytes()
    if len(data) < HEADER_SIZE:
        message = messages.SNAPSHOT_TRUNCATED_ERROR_MESSAGE.format(size=len(data), expected=HEADER_SIZE)
        raise SnapshotFormatError(message)

    n, extent, cx, cy, cz = np.frombuffer(data, dtype=HEADER_FLOATS, count=5)
    count = int(np.frombuffer(data, dtype=HEADER_COUNT, count=1, offset=5 * HEADER_FLOATS.itemsize)[0])
    if not np.isfinite(n) or n != int(n) or count != int(n) ** 3:
        raise SnapshotFormatError(messages.SNAPSHOT_HEADER_ERROR_MESSAGE.format(n=float(n), count=count))

    expected = HEADER_SIZE + count * HEADER_FLOATS.itemsize
    if len(data) != expected:
        raise SnapshotFormatError(messages.SNAPSHOT_TRUNCATED_ERROR_MESSAGE.format(size=len(data), expected=expected))

    n = int(n)
    values = np.frombuffer(data, dtype=HEADER_FLOATS, offset=HEADER_SIZE).reshape(n, n, n)
    return LevelSetField(spec=GridSpec(n=n, extent=float(extent)), values=values, center=(cx, cy, cz))


def write_slice(field: LevelSetField, stream: IO[str]) -> int:
    """
    Writes `x,y,phi` rows for the grid plane closest to the center's z.

    :return: Number of rows written.
    """

    axis = field.spec.axis()
    k = field.spec.nearest_index(field.center)[2]
    plane = field.values[:, :, k]
    rows = ((float(x), float(y), float(plane[i, j])) for i, x in enumerate(axis) for j, y in enumerate(axis))
    return write_csv(stream, ("x", "y", "phi"), rows)
