"""Desk-scale embedding support: column standardization, classical
(Torgerson) multidimensional scaling, neighborhood-preservation quality
and ingestion of externally computed embeddings."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import as_matrix, check_k
from .errors import (
    ConstantColumn,
    EigenFailure,
    NonNumeric,
    RowCountMismatch,
    TooFewPoints,
)

METHOD_CLASSICAL = "classical-mds"
METHOD_EXTERNAL = "external"


def standardize(matrix, column_names=None) -> np.ndarray:
    """Shift/scale every column to mean 0 and unit variance (population
    convention).  Constant columns cannot be standardized and raise."""
    m = as_matrix(matrix)
    mean = m.mean(axis=0)
    std = m.std(axis=0)
    zero = np.nonzero(std == 0.0)[0]
    if len(zero):
        col = column_names[zero[0]] if column_names is not None else str(int(zero[0]))
        raise ConstantColumn(col)
    return (m - mean) / std


@dataclass(frozen=True)
class EmbeddingResult:
    coords: np.ndarray          # (n, 2) point coordinates
    method: str
    stress: float               # normalized residual vs. source distances
    eigenvalues: np.ndarray     # non-increasing spectrum (classical MDS)
    energy: float               # (l1 + l2) / sum |l|, embedding diagnostics
    quality: np.ndarray | None  # per-point neighborhood preservation in [0, 1]

    @property
    def n(self) -> int:
        return len(self.coords)


def _pairwise_distances(m: np.ndarray) -> np.ndarray:
    sq = (m * m).sum(axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (m @ m.T)
    np.clip(d2, 0.0, None, out=d2)
    return np.sqrt(d2)


def classical_mds(matrix, quality_k: int = 10) -> EmbeddingResult:
    """Classical MDS of the row vectors into the plane.

    The double-centered squared-distance matrix is diagonalized, the top
    two eigenpairs give the configuration, each axis is given a
    deterministic sign (first nonzero coordinate positive), and the
    configuration is isotropically rescaled to the least-squares optimal
    scale against the source distances.  The rescale is exactly 1 whenever
    the data is perfectly 2D-embeddable, so plain Torgerson fidelity is
    preserved; for truncated spectra it removes the systematic shrinkage
    of the projected distances.
    """
    m = as_matrix(matrix)
    n = len(m)
    if n < 3:
        raise TooFewPoints(f"classical MDS needs at least 3 rows, got {n}")

    delta = _pairwise_distances(m)
    d2 = delta * delta
    row_mean = d2.mean(axis=1, keepdims=True)
    col_mean = d2.mean(axis=0, keepdims=True)
    b = -0.5 * (d2 - row_mean - col_mean + d2.mean())

    try:
        evals, evecs = np.linalg.eigh(b)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise EigenFailure(str(exc)) from exc

    order = np.argsort(evals)[::-1]
    evals = evals[order]
    evecs = evecs[:, order]

    top = np.clip(evals[:2], 0.0, None)
    coords = evecs[:, :2] * np.sqrt(top)

    for axis in range(2):
        col = coords[:, axis]
        nz = np.nonzero(col)[0]
        if len(nz) and col[nz[0]] < 0:
            coords[:, axis] = -col

    d = _pairwise_distances(coords)
    iu = np.triu_indices(n, 1)
    denom = float((d[iu] ** 2).sum())
    scale = float((delta[iu] * d[iu]).sum() / denom) if denom > 0 else 1.0
    coords = coords * scale
    d = d * scale

    delta_sq = float((delta[iu] ** 2).sum())
    stress = float(np.sqrt(((delta[iu] - d[iu]) ** 2).sum() / delta_sq)) if delta_sq > 0 else 0.0

    abs_sum = float(np.abs(evals).sum())
    energy = float(top.sum() / abs_sum) if abs_sum > 0 else 0.0

    coords = np.ascontiguousarray(coords)
    coords.setflags(write=False)
    quality = projection_quality(m, coords, k=min(quality_k, n - 1))
    return EmbeddingResult(
        coords=coords,
        method=METHOD_CLASSICAL,
        stress=stress,
        eigenvalues=evals,
        energy=energy,
        quality=quality,
    )


def projection_quality(matrix, coords, k: int = 10) -> np.ndarray:
    """Per-point Jaccard overlap of the k nearest neighbors in the source
    space and in the plane; 1.0 means the neighborhood is fully preserved."""
    m = as_matrix(matrix)
    p = as_matrix(coords)
    n = len(m)
    if len(p) != n:
        raise RowCountMismatch(f"matrix has {n} rows but coords has {len(p)}")
    k = check_k(k, n)

    def knn(d: np.ndarray) -> np.ndarray:
        np.fill_diagonal(d, np.inf)
        return np.argsort(d, axis=1, kind="stable")[:, :k]

    high = knn(_pairwise_distances(m))
    low = knn(_pairwise_distances(p))
    quality = np.empty(n)
    for i in range(n):
        a = set(high[i].tolist())
        b = set(low[i].tolist())
        quality[i] = len(a & b) / len(a | b)
    return quality


def ingest_embedding(path, expected_rows: int | None = None) -> np.ndarray:
    """Read x,y coordinates from a CSV file (header optional) and return
    them index-aligned with the dataset rows."""
    rows: list[tuple[float, float]] = []
    with open(Path(path), newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for line_no, row in enumerate(reader, start=1):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                x, y = float(row[0]), float(row[1])
            except (ValueError, IndexError):
                if line_no == 1:
                    continue  # header row
                raise NonNumeric(
                    f"line {line_no} of {path} is not a numeric x,y pair: {row!r}"
                ) from None
            rows.append((x, y))
    coords = np.asarray(rows, dtype=np.float64).reshape(-1, 2)
    if expected_rows is not None and len(coords) != expected_rows:
        raise RowCountMismatch(
            f"embedding file has {len(coords)} rows, dataset has {expected_rows}"
        )
    if len(coords) and not np.isfinite(coords).all():
        raise NonNumeric(f"embedding file {path} contains non-finite coordinates")
    coords.setflags(write=False)
    return coords


class ClassicalMDS(BaseEstimator):
    """Estimator-style wrapper around classical_mds.

    fit(X) stores the embedding; fit_transform(X) returns the (n, 2)
    configuration.  There is no out-of-sample transform.
    """

    def __init__(self, quality_k: int = 10):
        self.quality_k = quality_k

    def fit(self, X, y=None):
        result = classical_mds(X, quality_k=self.quality_k)
        self.embedding_ = result.coords
        self.stress_ = result.stress
        self.eigenvalues_ = result.eigenvalues
        self.quality_ = result.quality
        self.result_ = result
        return self

    def fit_transform(self, X, y=None):
        self.fit(X)
        return self.embedding_
