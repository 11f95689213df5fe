"""Attribute metadata, range discretization and histograms.

Continuous attributes are clamped to the user range and discretized into
equidistant half-open bins (the top bin is closed), with values outside
the range folded into the extremal bins but reported separately so the
histogram view can draw them below the axis.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

DEFAULT_LABELS = ("very low", "low", "medium", "high", "very high")
DEFAULT_COLORS = ("blue", "green", "yellow", "orange", "red")

# symbolic color keys -> hex, resolved by renderers (five-class spectral)
PALETTES = {
    "spectral5": {
        "blue": "#2b83ba",
        "green": "#abdda4",
        "yellow": "#ffffbf",
        "orange": "#fdae61",
        "red": "#d7191c",
    },
}


def default_labels(bin_count: int) -> tuple[str, ...]:
    if bin_count == 5:
        return DEFAULT_LABELS
    return tuple(f"bin {i + 1}" for i in range(bin_count))


def default_colors(bin_count: int) -> tuple[str, ...]:
    if bin_count == 5:
        return DEFAULT_COLORS
    return tuple(DEFAULT_COLORS[i % len(DEFAULT_COLORS)] for i in range(bin_count))


@dataclass(frozen=True)
class AttributeSpec:
    """Immutable description of how one attribute is binned and displayed.
    Edits create new versions (dataclasses.replace)."""

    name: str
    kind: str = "continuous"  # "continuous" | "categorical"
    data_min: float = float("nan")
    data_max: float = float("nan")
    user_range: tuple[float, float] | None = None
    bin_count: int = 5
    labels: tuple[str, ...] = ()
    colors: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("continuous", "categorical"):
            raise ValueError(f"unknown attribute kind {self.kind!r}")
        if self.bin_count < 1:
            raise ValueError("bin_count must be >= 1")
        if self.kind == "continuous":
            lo, hi = self.range
            if not lo < hi:
                raise ValueError(f"attribute {self.name!r}: range ({lo}, {hi}) needs lo < hi")
        if not self.labels:
            object.__setattr__(self, "labels", default_labels(self.bin_count))
        if not self.colors:
            object.__setattr__(self, "colors", default_colors(self.bin_count))
        if len(self.labels) != self.bin_count or len(self.colors) != self.bin_count:
            raise ValueError("labels/colors must match bin_count")

    @property
    def range(self) -> tuple[float, float]:
        if self.user_range is not None:
            return float(self.user_range[0]), float(self.user_range[1])
        return float(self.data_min), float(self.data_max)

    def bin_edges(self) -> np.ndarray:
        lo, hi = self.range
        width = (hi - lo) / self.bin_count
        edges = lo + np.arange(self.bin_count + 1) * width
        edges[-1] = hi
        return edges


@dataclass(frozen=True)
class BinnedAttribute:
    """Per-point bin assignment plus histogram bookkeeping."""

    spec: AttributeSpec
    bin_index: np.ndarray   # (n,) int32, -1 where the value is missing
    histogram: np.ndarray   # (bin_count,) point counts
    below_range: np.ndarray  # ids clamped up into bin 0
    above_range: np.ndarray  # ids clamped down into the last bin
    missing: np.ndarray     # ids excluded from binning entirely
    categories: tuple[str, ...] | None = None
    outlier_counts: np.ndarray | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.bin_index)

    @property
    def bin_count(self) -> int:
        return self.spec.bin_count

    def member_ids(self, b: int) -> np.ndarray:
        return np.nonzero(self.bin_index == b)[0].astype(np.int32)

    def with_outlier_counts(self, counts) -> "BinnedAttribute":
        return dataclasses.replace(
            self, outlier_counts=np.asarray(counts, dtype=np.int64)
        )


def bin_assign(values, spec: AttributeSpec) -> BinnedAttribute:
    """Assign every finite value to a bin of the spec's range.

    Bin i covers [lo + i*w, lo + (i+1)*w) with the last bin closed at hi.
    Out-of-range values clamp into the extremal bins and are additionally
    listed in below_range / above_range; missing values (NaN) never enter
    the binning and are reported in ``missing``.
    """
    if spec.kind != "continuous":
        raise ValueError("bin_assign needs a continuous AttributeSpec")
    vals = np.asarray(values, dtype=np.float64)
    lo, hi = spec.range
    edges = spec.bin_edges()

    finite = np.isfinite(vals)
    idx = np.full(len(vals), -1, dtype=np.int32)
    v = vals[finite]
    raw = np.searchsorted(edges, v, side="right") - 1
    raw = np.clip(raw, 0, spec.bin_count - 1)
    idx[finite] = raw

    below = np.nonzero(finite & (vals < lo))[0].astype(np.int32)
    above = np.nonzero(finite & (vals > hi))[0].astype(np.int32)
    missing = np.nonzero(~finite)[0].astype(np.int32)
    hist = np.bincount(idx[finite], minlength=spec.bin_count).astype(np.int64)

    return BinnedAttribute(
        spec=spec,
        bin_index=idx,
        histogram=hist,
        below_range=below,
        above_range=above,
        missing=missing,
    )


def categorize(values, name: str = "", colors: tuple[str, ...] = ()) -> BinnedAttribute:
    """One bin per distinct category, ordered by first appearance.
    None and empty strings count as missing."""
    cats: list[str] = []
    lookup: dict[str, int] = {}
    idx = np.full(len(values), -1, dtype=np.int32)
    for i, raw in enumerate(values):
        if raw is None or (isinstance(raw, float) and np.isnan(raw)) or raw == "":
            continue
        key = str(raw)
        if key not in lookup:
            lookup[key] = len(cats)
            cats.append(key)
        idx[i] = lookup[key]
    if not cats:
        raise ValueError("no categories found (all values missing)")

    k = len(cats)
    spec = AttributeSpec(
        name=name,
        kind="categorical",
        bin_count=k,
        labels=tuple(cats),
        colors=colors if colors else default_colors(k),
    )
    hist = np.bincount(idx[idx >= 0], minlength=k).astype(np.int64)
    return BinnedAttribute(
        spec=spec,
        bin_index=idx,
        histogram=hist,
        below_range=np.empty(0, dtype=np.int32),
        above_range=np.empty(0, dtype=np.int32),
        missing=np.nonzero(idx < 0)[0].astype(np.int32),
        categories=tuple(cats),
    )
