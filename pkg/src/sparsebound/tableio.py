"""Result tables and their CSV form.

CSV output is RFC-4180 style: a header row of series names, one data row per
sweep point, "." as decimal separator, 12 significant digits.  Files are
written atomically (temp file in the target directory, then rename) so a
failed run never leaves a partial table behind.
"""

from __future__ import annotations

import csv
import os
import tempfile
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Table:
    """A dense numeric table: named columns over float64 rows."""

    columns: tuple[str, ...]
    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"table data must be 2-d, got shape {arr.shape}")
        if arr.shape[1] != len(self.columns):
            raise ValueError(
                f"{len(self.columns)} column names for {arr.shape[1]} data columns"
            )
        if len(set(self.columns)) != len(self.columns):
            raise ValueError("column names must be unique")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "columns", tuple(self.columns))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    def column(self, name: str) -> np.ndarray:
        try:
            idx = self.columns.index(name)
        except ValueError:
            raise KeyError(f"no column named {name!r}, have {self.columns}") from None
        return self.data[:, idx]


def atomic_write_text(path: str, write_body) -> None:
    """Write via a temp file in the target directory, then rename into place."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        umask = os.umask(0)
        os.umask(umask)
        os.fchmod(fd, 0o666 & ~umask)  # mkstemp defaults to 0600
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            write_body(handle)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def emit_csv(table: Table, path: str) -> None:
    """Write the table to ``path`` as CSV, atomically."""
    if table.rows < 1:
        raise ValueError("refusing to write an empty table")

    def body(handle):
        writer = csv.writer(handle)
        writer.writerow(table.columns)
        for row in table.data:
            writer.writerow(format(v, ".12g") for v in row)

    atomic_write_text(path, body)


def read_csv(path: str) -> Table:
    """Parse a table previously written by emit_csv."""
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty CSV file") from None
        rows = [[float(cell) for cell in row] for row in reader if row]
    if not rows:
        raise ValueError(f"{path}: CSV file has a header but no data rows")
    return Table(tuple(header), np.array(rows, dtype=np.float64))
