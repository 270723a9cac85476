import csv
import io
import logging
from typing import Dict, List, Sequence

import numpy as np

from utils.errors import InvalidParameterError

logger = logging.getLogger(__name__)


def parse_grid(text: str) -> np.ndarray:
    """
    Parse a "start:stop:count" grid string

    Args:
        text: Grid as start:stop:count, count >= 1

    Returns:
        Strictly increasing grid (a single point when count is 1)
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidParameterError(f"Grid must look like start:stop:count, got '{text}'")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise InvalidParameterError(f"Grid must look like start:stop:count, got '{text}'")

    if count < 1:
        raise InvalidParameterError(f"Grid needs at least one point, got {count}")
    if count > 1 and stop <= start:
        raise InvalidParameterError(f"Grid stop must exceed start ({start} >= {stop})")
    return np.linspace(start, stop, count)


def render_csv(rows: List[Dict], columns: Sequence[str]) -> str:
    """
    Render rows as CSV with a header line

    Args:
        rows: Dictionaries keyed by column name
        columns: Column order

    Returns:
        CSV text with RFC 4180 quoting
    """
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(row.get(key)) for key in columns})
    return buffer.getvalue()


def render_table(rows: List[Dict], columns: Sequence[str]) -> str:
    """Fixed-width text table for terminals"""
    cells = [[_cell(row.get(key)) for key in columns] for row in rows]
    widths = [
        max([len(column)] + [len(line[i]) for line in cells]) for i, column in enumerate(columns)
    ]
    header = "  ".join(column.ljust(width) for column, width in zip(columns, widths))
    rule = "  ".join("-" * width for width in widths)
    body = ["  ".join(cell.ljust(width) for cell, width in zip(line, widths)) for line in cells]
    return "\n".join([header, rule] + body)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.15g}"
    return str(value)


def format_processing_time(seconds: float) -> str:
    """
    Format processing time in human-readable format

    Args:
        seconds: Processing time in seconds

    Returns:
        Formatted time string
    """
    if seconds < 1:
        return f"{seconds*1000:.0f}ms"
    else:
        return f"{seconds:.2f}s"
