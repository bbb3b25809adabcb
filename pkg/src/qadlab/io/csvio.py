"""Deterministic CSV output (RFC-4180, '.' decimal, header row).

Floats are written with repr-shortest formatting so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "item"):  # numpy scalar
        value = value.item()
        if isinstance(value, float):
            return repr(value)
    return str(value)


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def read_csv(path) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [row for row in reader]


def read_columns(path, columns: Sequence[str]) -> list[list[float]]:
    """Read named numeric columns; raises KeyError naming any missing column."""
    header, rows = read_csv(path)
    idx = []
    for c in columns:
        if c not in header:
            raise KeyError(f"column {c!r} not in {path} (has {header})")
        idx.append(header.index(c))
    return [[float(r[i]) for r in rows] for i in idx]
