"""Minimum spanning tree over the Delaunay edge set and the default
filter-threshold heuristic derived from its edge lengths."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SinglePoint
from .filtration import DisjointSet
from .geometry import Triangulation


@dataclass(frozen=True)
class SpanningTree:
    """Minimum spanning tree of the Delaunay graph: exactly n-1 edges,
    every one of them a Delaunay edge."""

    edges: tuple[tuple[int, int], ...]
    lengths: np.ndarray
    total_length: float


def mst(t: Triangulation) -> SpanningTree:
    """Kruskal over the Delaunay edges; length ties broken by vertex-index
    pair so the result is deterministic.

    The Euclidean MST of a planar point set is a subgraph of its Delaunay
    triangulation, so this equals the MST over the complete graph.
    """
    order = np.lexsort((t.edges[:, 1], t.edges[:, 0], t.edge_lengths))
    ds = DisjointSet(t.vertices)
    picked: list[tuple[int, int]] = []
    lengths: list[float] = []
    needed = t.n_vertices - 1
    for e in order:
        u, v = int(t.edges[e, 0]), int(t.edges[e, 1])
        if ds.union(u, v):
            picked.append((u, v))
            lengths.append(float(t.edge_lengths[e]))
            if len(picked) == needed:
                break
    arr = np.asarray(lengths)
    return SpanningTree(tuple(picked), arr, float(arr.sum()))


def default_epsilon(st: SpanningTree, quantile_method: str = "linear") -> float:
    """Suggested filter threshold: q75 + 1.5 * (q75 - q25) of the MST edge
    lengths, quantiles by linear interpolation between order statistics."""
    if len(st.lengths) < 1:
        raise SinglePoint("need at least 2 vertices to suggest a threshold")
    q25, q75 = np.percentile(st.lengths, [25.0, 75.0], method=quantile_method)
    return float(q75 + 1.5 * (q75 - q25))
