"""Per-bin contour pipeline: subset the points of an attribute bin,
triangulate, filter by threshold, extract boundaries and classify every
member as covered, outlier or uncovered."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import as_points, check_epsilon
from .binning import AttributeSpec, BinnedAttribute, bin_assign, categorize
from .errors import AllCollinear, ComputationSuperseded, TooFewPoints
from .filtration import (
    EDGE_LENGTH,
    MODES,
    ContourGeometry,
    Ring,
    extract_boundary,
    filter_complex,
)
from .geometry import delaunay_triangulate, merge_duplicates
from .mst import default_epsilon, mst


@dataclass(frozen=True)
class BinResult:
    """Classification of one attribute bin's members."""

    bin_index: int
    label: str
    color: str
    member_ids: np.ndarray
    contours: tuple[ContourGeometry, ...]
    covered_ids: np.ndarray
    outlier_ids: np.ndarray
    uncovered_ids: np.ndarray


@dataclass(frozen=True)
class Rangeset:
    """All bin contours of one attribute at one threshold."""

    attribute: str
    epsilon: float
    mode: str
    bins: tuple[BinResult, ...]

    def outlier_counts(self) -> np.ndarray:
        return np.asarray([len(b.outlier_ids) for b in self.bins], dtype=np.int64)


def suggest_epsilon(points) -> float:
    """Default threshold from the MST of the full embedded point set:
    q75 + 1.5 * IQR of the tree's edge lengths."""
    return default_epsilon(mst(delaunay_triangulate(points)))


def compute_rangeset(
    points,
    binned: BinnedAttribute,
    epsilon: float,
    mode: str = EDGE_LENGTH,
    should_abort: Callable[[], bool] | None = None,
) -> Rangeset:
    """Run the contour pipeline for every bin of a binned attribute.

    Bins are independent; degenerate bins (too few members, collinear
    layouts) yield no geometry but still classify their members.  When
    ``should_abort`` returns True between bins the computation raises
    ComputationSuperseded (latest-wins cancellation).
    """
    pts = as_points(points)
    eps = check_epsilon(epsilon)
    if mode not in MODES:
        raise ValueError(f"unknown filtration mode {mode!r}, expected one of {MODES}")
    if len(pts) != binned.n:
        raise ValueError(
            f"points ({len(pts)}) and binned attribute ({binned.n}) are not index-aligned"
        )

    spec = binned.spec
    results = []
    for b in range(binned.bin_count):
        if should_abort is not None and should_abort():
            raise ComputationSuperseded(f"rangeset for {spec.name!r} was superseded")
        ids = binned.member_ids(b)
        contours, covered, outliers, uncovered = _classify_bin(pts, ids, eps, mode)
        results.append(
            BinResult(
                bin_index=b,
                label=spec.labels[b],
                color=spec.colors[b],
                member_ids=ids,
                contours=contours,
                covered_ids=covered,
                outlier_ids=outliers,
                uncovered_ids=uncovered,
            )
        )
    return Rangeset(attribute=spec.name, epsilon=eps, mode=mode, bins=tuple(results))


def _classify_bin(pts, ids, eps, mode):
    empty = np.empty(0, dtype=np.int32)
    if len(ids) == 0:
        return (), empty, empty, empty
    if len(ids) < 3:
        return (), empty, ids.copy(), empty

    sub = pts[ids]
    try:
        t = delaunay_triangulate(sub)
    except (TooFewPoints, AllCollinear):
        outliers, uncovered = _classify_degenerate(sub, eps)
        return (), empty, ids[outliers], ids[uncovered]

    fc = filter_complex(t, eps, mode)
    contours = tuple(
        _remap_geometry(g, ids) for g in extract_boundary(fc, t)
    )

    rep_counts = np.bincount(t.representative, minlength=len(sub))
    covered_local = t.expand(fc.covered_vertices)
    uncovered_local = [t.expand(fc.uncovered)]
    outlier_local = []
    for r in fc.outliers:
        members = np.nonzero(t.representative == r)[0]
        if rep_counts[r] == 1:
            outlier_local.append(members)
        else:
            # duplicates sit at distance 0 <= eps of each other, so a merged
            # vertex with several members is a multi-point component
            uncovered_local.append(members)

    covered = ids[covered_local]
    outliers = ids[np.sort(np.concatenate(outlier_local))] if outlier_local else empty
    uncovered = ids[np.sort(np.concatenate(uncovered_local))] if uncovered_local else empty
    return contours, covered, outliers, uncovered


def _classify_degenerate(sub, eps):
    """Members of a bin whose distinct positions admit no triangle: chain
    consecutive positions along their common line and classify singleton
    positions carrying a single point as outliers, everything else as
    uncovered."""
    rep = merge_duplicates(sub)
    reps, counts = np.unique(rep, return_counts=True)
    order = np.lexsort((sub[reps, 1], sub[reps, 0]))
    reps = reps[order]
    counts = counts[order]

    k = len(reps)
    comp = np.arange(k)
    for i in range(k - 1):
        gap = float(np.hypot(*(sub[reps[i + 1]] - sub[reps[i]])))
        if gap <= eps:
            comp[i + 1] = comp[i]

    comp_sizes = {}
    for i in range(k):
        comp_sizes[comp[i]] = comp_sizes.get(comp[i], 0) + int(counts[i])

    outliers = []
    uncovered = []
    for i in range(k):
        members = np.nonzero(rep == reps[i])[0]
        if comp_sizes[comp[i]] == 1:
            outliers.append(members)
        else:
            uncovered.append(members)
    empty = np.empty(0, dtype=np.int64)
    out = np.sort(np.concatenate(outliers)) if outliers else empty
    unc = np.sort(np.concatenate(uncovered)) if uncovered else empty
    return out, unc


def _remap_geometry(geometry: ContourGeometry, ids: np.ndarray) -> ContourGeometry:
    """Translate a bin-local contour onto global point ids."""
    rings = tuple(
        Ring(
            vertices=ids[r.vertices],
            coords=r.coords,
            signed_area=r.signed_area,
            parent=r.parent,
        )
        for r in geometry.rings
    )
    return ContourGeometry(rings)


class Rangesets(BaseEstimator):
    """Estimator-style front door for rangeset computation.

    fit(X, y) takes 2D embedded coordinates X and one attribute column y
    (numeric -> equidistant bins over the value range, strings -> one bin
    per category) and stores the resulting contours on ``rangeset_``.
    """

    def __init__(
        self,
        epsilon="auto",
        mode: str = EDGE_LENGTH,
        bins: int = 5,
        user_range: tuple[float, float] | None = None,
        attribute: str = "value",
    ):
        self.epsilon = epsilon
        self.mode = mode
        self.bins = bins
        self.user_range = user_range
        self.attribute = attribute

    def fit(self, X, y):
        pts = as_points(X)
        values = np.asarray(y)
        if values.dtype.kind in "OUS":
            binned = categorize(values.tolist(), name=self.attribute)
        else:
            vals = values.astype(np.float64)
            finite = vals[np.isfinite(vals)]
            spec = AttributeSpec(
                name=self.attribute,
                data_min=float(finite.min()),
                data_max=float(finite.max()),
                user_range=self.user_range,
                bin_count=self.bins,
            )
            binned = bin_assign(vals, spec)

        eps = suggest_epsilon(pts) if self.epsilon == "auto" else check_epsilon(self.epsilon)
        self.epsilon_ = eps
        self.binned_ = binned
        self.rangeset_ = compute_rangeset(pts, binned, eps, self.mode)
        return self

    def fit_predict(self, X, y):
        """Per-point status codes: 0 covered, 1 outlier, 2 uncovered,
        -1 missing value."""
        self.fit(X, y)
        status = np.full(len(self.binned_.bin_index), -1, dtype=np.int32)
        for b in self.rangeset_.bins:
            status[b.covered_ids] = 0
            status[b.outlier_ids] = 1
            status[b.uncovered_ids] = 2
        return status
