"""Table and JSON emitters for the CLI.

CSV output is RFC-4180 style with LF line endings and 6-decimal fixed-point
numerics so repeated runs diff cleanly; JSON output carries full precision.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path


def format_cell(value) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def emit_table_csv(rows, header, destination) -> int:
    """Write a rectangular table as CSV; returns bytes written."""
    header = list(header)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        row = list(row)
        if len(row) != len(header):
            raise ValueError(
                f"row width {len(row)} does not match header width {len(header)}"
            )
        writer.writerow([format_cell(cell) if cell is not None else "" for cell in row])
    data = buffer.getvalue().encode("utf-8")
    Path(destination).write_bytes(data)
    return len(data)


def emit_table_json(rows, header, destination) -> int:
    """Write the same table as a JSON array of row objects (full precision)."""
    header = list(header)
    records = []
    for row in rows:
        row = list(row)
        if len(row) != len(header):
            raise ValueError(
                f"row width {len(row)} does not match header width {len(header)}"
            )
        records.append(dict(zip(header, row)))
    return write_json(records, destination)


def write_json(payload, destination) -> int:
    data = (json.dumps(payload, indent=2) + "\n").encode("utf-8")
    Path(destination).write_bytes(data)
    return len(data)
