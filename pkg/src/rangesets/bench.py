"""Timing study: rangeset computation over uniform random data."""

from __future__ import annotations

import gc
import time
from dataclasses import dataclass

import numpy as np

from .binning import AttributeSpec, bin_assign
from .pipeline import compute_rangeset, suggest_epsilon


@dataclass
class BenchRow:
    n: int
    rangeset_seconds: float
    suggest_seconds: float


def bench_rangesets(sizes, bins: int = 5, seed: int = 0, epsilon: float | None = None) -> list[BenchRow]:
    """Time a full 5-bin rangeset (per-bin triangulation, filtering and
    boundary extraction) on n uniform points, one row per requested n."""
    rows = []
    for n in sizes:
        rng = np.random.default_rng(seed)
        pts = rng.random((int(n), 2)) * 10.0
        values = rng.random(int(n))
        spec = AttributeSpec(name="bench", data_min=0.0, data_max=1.0, bin_count=bins)
        binned = bin_assign(values, spec)

        gc.collect()
        t0 = time.perf_counter()
        eps = suggest_epsilon(pts) if epsilon is None else epsilon
        t1 = time.perf_counter()
        compute_rangeset(pts, binned, eps)
        t2 = time.perf_counter()
        rows.append(BenchRow(n=int(n), rangeset_seconds=t2 - t1, suggest_seconds=t1 - t0))
    return rows


def linear_fit_r2(ns, times) -> float:
    """Coefficient of determination of the least-squares line time ~ n."""
    x = np.asarray(ns, dtype=np.float64)
    y = np.asarray(times, dtype=np.float64)
    slope, intercept = np.polyfit(x, y, 1)
    pred = slope * x + intercept
    ss_res = float(((y - pred) ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    return 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
