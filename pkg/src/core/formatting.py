import csv
import math
from typing import (
    IO,
    Iterable,
    Optional,
    Sequence,
    Union,
)

from django.conf import settings


_CELL_TYPE = Union[float, int, str, bool, None]


def format_number(value: float, digits: Optional[int] = None) -> str:
    """
    Formats a float with `FLOW_CSV_SIGNIFICANT_DIGITS` significant digits (17 by default, lossless for doubles).

    :raises ValueError: if the value is NaN or infinite; no CSV written by the toolkit may contain either.
    """

    if not math.isfinite(value):
        raise ValueError(f"Refusing to serialize non-finite value {value!r}")
    digits = digits or settings.FLOW_CSV_SIGNIFICANT_DIGITS
    # -0.0 prints as "-0"
    return f"{value + 0.0:.{digits}g}"


def _format_cell(cell: _CELL_TYPE) -> str:
    if cell is None:
        return ""
    if isinstance(cell, bool):
        return "true" if cell else "false"
    if isinstance(cell, (int, str)):
        return str(cell)
    return format_number(cell)


def write_csv(stream: IO[str], header: Sequence[str], rows: Iterable[Sequence[_CELL_TYPE]]) -> int:
    """
    Writes a header row and data rows to `stream`, formatting numbers deterministically.

    :return: Number of data rows written.
    """

    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow([_format_cell(cell) for cell in row])
        count += 1
    return count
