"""CSV dataset loading with simple type inference.

Columns where every non-missing cell parses as a float become continuous
attributes, everything else is categorical; the config can override either
direction.  Missing markers are "", "NA" and "NaN".
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import EmptyDataset, ParseError, UnknownAttribute

MISSING_MARKERS = ("", "NA", "NaN")


@dataclass(frozen=True)
class Column:
    name: str
    kind: str                      # "continuous" | "categorical"
    values: np.ndarray | None      # float64 with NaN for missing (continuous)
    categories: tuple[str | None, ...] | None  # raw keys, None for missing

    @property
    def missing_count(self) -> int:
        if self.kind == "continuous":
            return int(np.isnan(self.values).sum())
        return sum(1 for c in self.categories if c is None)


@dataclass(frozen=True)
class Dataset:
    path: str
    columns: tuple[Column, ...]
    n_rows: int
    fingerprint: str = field(default="")

    def column(self, name: str) -> Column:
        for col in self.columns:
            if col.name == name:
                return col
        raise UnknownAttribute(f"no column named {name!r}")

    @property
    def continuous_names(self) -> list[str]:
        return [c.name for c in self.columns if c.kind == "continuous"]

    @property
    def categorical_names(self) -> list[str]:
        return [c.name for c in self.columns if c.kind == "categorical"]

    def matrix(self, names: list[str]) -> tuple[np.ndarray, np.ndarray]:
        """Stack the named continuous columns into an (n, d) matrix and drop
        rows with missing values; returns (matrix, kept row ids)."""
        cols = [self.column(n) for n in names]
        for c in cols:
            if c.kind != "continuous":
                raise ValueError(f"column {c.name!r} is categorical, cannot embed")
        m = np.column_stack([c.values for c in cols])
        keep = ~np.isnan(m).any(axis=1)
        return m[keep], np.nonzero(keep)[0].astype(np.int32)


def _is_missing(cell: str, markers) -> bool:
    return cell.strip() in markers


def load_dataset(path, kind_overrides: dict[str, str] | None = None,
                 missing_markers=MISSING_MARKERS) -> Dataset:
    """Parse a comma-separated file with a header row into typed columns."""
    path = Path(path)
    kind_overrides = kind_overrides or {}
    raw = path.read_bytes()
    fingerprint = hashlib.sha256(raw).hexdigest()

    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyDataset(f"{path} is empty") from None
        header = [h.strip() for h in header]
        rows: list[list[str]] = []
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"expected {len(header)} fields, got {len(row)}",
                    line=line_no,
                    column=min(len(row), len(header)) + 1,
                )
            rows.append(row)

    if not rows:
        raise EmptyDataset(f"{path} has a header but no data rows")

    columns = []
    for j, name in enumerate(header):
        cells = [r[j] for r in rows]
        numeric: list[float] = []
        is_numeric = kind_overrides.get(name) != "categorical"
        if is_numeric:
            for cell in cells:
                if _is_missing(cell, missing_markers):
                    numeric.append(float("nan"))
                    continue
                try:
                    numeric.append(float(cell))
                except ValueError:
                    if kind_overrides.get(name) == "continuous":
                        raise ParseError(
                            f"column {name!r}: {cell!r} is not numeric",
                            line=2 + cells.index(cell),
                            column=j + 1,
                        ) from None
                    is_numeric = False
                    break
        if is_numeric:
            columns.append(
                Column(name=name, kind="continuous",
                       values=np.asarray(numeric, dtype=np.float64), categories=None)
            )
        else:
            cats = tuple(
                None if _is_missing(c, missing_markers) else c.strip() for c in cells
            )
            columns.append(Column(name=name, kind="categorical", values=None, categories=cats))

    return Dataset(
        path=str(path), columns=tuple(columns), n_rows=len(rows), fingerprint=fingerprint
    )
