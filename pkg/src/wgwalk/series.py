"""Tabular time series and their CSV serialization.

Floats are written with 17 significant digits, which round-trips every
IEEE double exactly. Metadata travels as ``# key=value`` lines ahead of
the header row.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass
class TimeSeries:
    """Rows of sampled observables; the first column is the sweep variable.

    When the first column is a time axis (``tau`` or ``t``) it must be
    strictly increasing. Parameter scans over two variables (e.g. the HOM
    scan) only require the first column to be non-decreasing.
    """

    columns: list[str]
    data: np.ndarray
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.columns = list(self.columns)
        self.data = np.asarray(self.data, dtype=float)
        if self.data.ndim != 2 or self.data.shape[1] != len(self.columns):
            raise DomainError(
                f"data shape {self.data.shape} does not match "
                f"{len(self.columns)} columns"
            )
        index = self.data[:, 0]
        steps = np.diff(index)
        if self.columns[0] in ("tau", "t"):
            if np.any(steps <= 0):
                raise DomainError(f"column '{self.columns[0]}' must be strictly increasing")
        elif np.any(steps < 0):
            raise DomainError(f"column '{self.columns[0]}' must be non-decreasing")

    def __len__(self):
        return self.data.shape[0]

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            self.columns == other.columns
            and self.metadata == other.metadata
            and self.data.shape == other.data.shape
            and np.array_equal(self.data, other.data)
        )

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key, value in self.metadata.items():
            buf.write(f"# {key}={value}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.data:
            writer.writerow([format(float(x), ".17g") for x in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "TimeSeries":
        metadata = {}
        body = []
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                metadata[key] = value
            elif line.strip():
                body.append(line)
        reader = csv.reader(body)
        columns = next(reader)
        rows = [[float(x) for x in row] for row in reader]
        data = np.array(rows, dtype=float).reshape(len(rows), len(columns))
        return cls(columns, data, metadata)

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv())

    @classmethod
    def read(cls, path) -> "TimeSeries":
        with open(path, encoding="utf-8") as fh:
            return cls.from_csv(fh.read())
