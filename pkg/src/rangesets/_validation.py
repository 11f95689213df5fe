"""Input validation helpers used across the public API."""

from __future__ import annotations

import numpy as np

from .errors import KTooLarge, NegativeEpsilon, TooFewPoints


def as_points(points) -> np.ndarray:
    """Coerce input to a read-only (n, 2) float64 array of finite coordinates."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) array of points, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("point coordinates must be finite (no NaN/Inf)")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


def as_matrix(data) -> np.ndarray:
    """Coerce input to an (n, d) float64 matrix with finite entries."""
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2D matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("matrix entries must be finite after missing-value handling")
    return arr


def check_epsilon(epsilon: float) -> float:
    eps = float(epsilon)
    if np.isnan(eps) or eps < 0.0:
        raise NegativeEpsilon(f"epsilon must be >= 0, got {epsilon!r}")
    return eps


def check_min_points(n: int, minimum: int = 3) -> None:
    if n < minimum:
        raise TooFewPoints(f"need at least {minimum} points, got {n}")


def check_k(k: int, n: int) -> int:
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k >= n:
        raise KTooLarge(f"k={k} must be smaller than the number of points ({n})")
    return k
