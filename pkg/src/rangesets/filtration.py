"""Threshold filtration of a triangulation and boundary extraction.

filter_complex keeps the sub-complex below a threshold (by edge length, or
alternatively by triangle area), extract_boundary turns the kept triangles
into closed contour rings with holes, and filtration_curve sweeps all
thresholds at once to produce the connected-component counts used by the
topology chart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_epsilon
from .errors import InconsistentInput
from .geometry import Triangulation

EDGE_LENGTH = "edge-length"
TRIANGLE_AREA = "triangle-area"
MODES = (EDGE_LENGTH, TRIANGLE_AREA)


class DisjointSet:
    """Union-find with path halving and union by size."""

    def __init__(self, ids):
        self.parent = {int(i): int(i) for i in ids}
        self.size = {int(i): 1 for i in ids}

    def find(self, i: int) -> int:
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


@dataclass(frozen=True, eq=False)
class FilteredComplex:
    """Sub-complex of a triangulation at one threshold value."""

    epsilon: float
    mode: str
    kept_triangles: np.ndarray   # sorted triangle ids
    kept_edges: np.ndarray       # sorted edge ids
    covered_vertices: np.ndarray  # vertices incident to >= 1 kept triangle
    outliers: np.ndarray         # singleton components of the kept edge graph
    uncovered: np.ndarray        # in a multi-vertex component, but no triangle
    source: Triangulation = field(repr=False)


def filter_complex(t: Triangulation, epsilon: float, mode: str = EDGE_LENGTH) -> FilteredComplex:
    """Keep edges of length <= epsilon and triangles whose three edges are
    all kept (edge-length mode), or triangles of area <= epsilon together
    with their bounding edges (triangle-area mode).  Comparison is
    inclusive so that epsilon = epsilon_max reproduces the convex hull."""
    eps = check_epsilon(epsilon)
    if mode not in MODES:
        raise ValueError(f"unknown filtration mode {mode!r}, expected one of {MODES}")

    if mode == EDGE_LENGTH:
        edge_mask = t.edge_lengths <= eps
        tri_mask = edge_mask[t.tri_edges].all(axis=1)
    else:
        tri_mask = t.triangle_areas() <= eps
        edge_mask = np.zeros(len(t.edges), dtype=bool)
        if tri_mask.any():
            edge_mask[np.unique(t.tri_edges[tri_mask])] = True

    covered = np.unique(t.triangles[tri_mask]) if tri_mask.any() else np.empty(0, dtype=np.int32)
    touched = np.unique(t.edges[edge_mask]) if edge_mask.any() else np.empty(0, dtype=np.int32)
    outliers = np.setdiff1d(t.vertices, touched)
    uncovered = np.setdiff1d(touched, covered)

    return FilteredComplex(
        epsilon=eps,
        mode=mode,
        kept_triangles=np.nonzero(tri_mask)[0].astype(np.int32),
        kept_edges=np.nonzero(edge_mask)[0].astype(np.int32),
        covered_vertices=covered.astype(np.int32),
        outliers=outliers.astype(np.int32),
        uncovered=uncovered.astype(np.int32),
        source=t,
    )


@dataclass(frozen=True)
class Ring:
    """One closed boundary loop.  Outer rings run counter-clockwise
    (positive signed area), holes clockwise."""

    vertices: np.ndarray   # vertex ids, implicit closure (last connects to first)
    coords: np.ndarray     # (k, 2) matching coordinates
    signed_area: float
    parent: int | None     # index of the enclosing outer ring, None for outers

    @property
    def is_hole(self) -> bool:
        return self.signed_area < 0.0


@dataclass(frozen=True)
class ContourGeometry:
    """Boundary of one edge-connected group of kept triangles."""

    rings: tuple[Ring, ...]

    @property
    def area(self) -> float:
        """Enclosed area: outer rings minus holes."""
        return float(sum(r.signed_area for r in self.rings))

    @property
    def hole_count(self) -> int:
        return sum(1 for r in self.rings if r.is_hole)

    def polygons(self) -> list[list[np.ndarray]]:
        """Rings grouped per outer: [[outer, hole, hole, ...], ...]."""
        groups: list[list[np.ndarray]] = []
        index_of: dict[int, int] = {}
        for i, r in enumerate(self.rings):
            if not r.is_hole:
                index_of[i] = len(groups)
                groups.append([r.coords])
        for i, r in enumerate(self.rings):
            if r.is_hole:
                target = index_of.get(r.parent, 0) if r.parent is not None else 0
                groups[target].append(r.coords)
        return groups


def _shoelace(coords: np.ndarray) -> float:
    x = coords[:, 0]
    y = coords[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _point_in_ring(px: float, py: float, coords: np.ndarray) -> bool:
    inside = False
    x0, y0 = coords[-1]
    for x1, y1 in coords:
        if (y0 > py) != (y1 > py):
            cross_x = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
            if px < cross_x:
                inside = not inside
        x0, y0 = x1, y1
    return inside


def extract_boundary(fc: FilteredComplex, t: Triangulation) -> list[ContourGeometry]:
    """Chain the edges incident to exactly one kept triangle into closed
    rings, one ContourGeometry per edge-connected triangle component.

    At pinch vertices the walk takes the most counter-clockwise unused
    boundary edge (measured from the reversed incoming direction), which
    splits touching loops into separate simple rings.
    """
    if fc.source is not t:
        raise InconsistentInput("filtered complex was not derived from this triangulation")
    if len(fc.kept_triangles) == 0:
        return []

    kept_tri = np.zeros(len(t.triangles), dtype=bool)
    kept_tri[fc.kept_triangles] = True

    # label edge-connected triangle components
    ds = DisjointSet(fc.kept_triangles)
    for e in fc.kept_edges:
        t0, t1 = t.edge_tris[e]
        if t1 != -1 and kept_tri[t0] and kept_tri[t1]:
            ds.union(int(t0), int(t1))

    # directed boundary edges, oriented as traversed by their kept triangle
    # (interior on the left), keyed by component
    per_component: dict[int, dict[int, list[int]]] = {}
    points = t.points
    for e in range(len(t.edges)):
        t0, t1 = t.edge_tris[e]
        incident = [ti for ti in (t0, t1) if ti != -1 and kept_tri[ti]]
        if len(incident) != 1:
            continue
        tri = int(incident[0])
        comp = ds.find(tri)
        va, vb, vc = (int(v) for v in t.triangles[tri])
        u, v = int(t.edges[e, 0]), int(t.edges[e, 1])
        for da, db in ((va, vb), (vb, vc), (vc, va)):
            if {da, db} == {u, v}:
                per_component.setdefault(comp, {}).setdefault(da, []).append(db)
                break

    geometries = []
    for comp in sorted(per_component):
        outgoing = per_component[comp]
        for targets in outgoing.values():
            targets.sort()
        rings: list[Ring] = []
        starts = sorted(outgoing)
        for start in starts:
            while outgoing[start]:
                ring_vertices = [start]
                prev = start
                cur = outgoing[start].pop(0)
                while cur != start:
                    ring_vertices.append(cur)
                    candidates = outgoing.get(cur, [])
                    if len(candidates) == 1:
                        nxt = candidates.pop(0)
                    else:
                        nxt = _most_ccw(points, prev, cur, candidates)
                        candidates.remove(nxt)
                    prev, cur = cur, nxt
                verts = np.asarray(ring_vertices, dtype=np.int32)
                coords = points[verts]
                rings.append(Ring(verts, coords, _shoelace(coords), None))

        rings = _assign_parents(rings, t, kept_tri)
        geometries.append(ContourGeometry(tuple(rings)))
    return geometries


def _most_ccw(points: np.ndarray, prev: int, cur: int, candidates: list[int]) -> int:
    """Candidate continuing the current face: maximal counter-clockwise
    rotation from the direction back toward the previous vertex."""
    px, py = points[prev]
    cx, cy = points[cur]
    back = math.atan2(py - cy, px - cx)
    best = None
    best_angle = -1.0
    for w in candidates:
        wx, wy = points[w]
        ang = (math.atan2(wy - cy, wx - cx) - back) % (2.0 * math.pi)
        if ang > best_angle:
            best_angle = ang
            best = w
    return best


def _assign_parents(rings: list[Ring], t: Triangulation, kept_tri: np.ndarray) -> list[Ring]:
    outers = [i for i, r in enumerate(rings) if not r.is_hole]
    if len(outers) <= 1:
        parent = outers[0] if outers else None
        return [
            Ring(r.vertices, r.coords, r.signed_area, parent if r.is_hole else None)
            for r in rings
        ]
    # several outers can only appear around pinch configurations; nest each
    # hole into the smallest outer that contains a probe point just inside it
    resolved = []
    for r in rings:
        if not r.is_hole:
            resolved.append(r)
            continue
        probe = _hole_probe(r, t, kept_tri)
        containing = [
            i for i in outers if _point_in_ring(probe[0], probe[1], rings[i].coords)
        ]
        if containing:
            parent = min(containing, key=lambda i: rings[i].signed_area)
        else:
            parent = max(outers, key=lambda i: rings[i].signed_area)
        resolved.append(Ring(r.vertices, r.coords, r.signed_area, parent))
    return resolved


def _hole_probe(ring: Ring, t: Triangulation, kept_tri: np.ndarray) -> tuple[float, float]:
    """A point strictly inside the hole: centroid of a discarded triangle
    adjacent to one of the hole's edges, falling back to the ring mean."""
    edge_index = {tuple(sorted(e)): i for i, e in enumerate(map(tuple, t.edges.tolist()))}
    verts = ring.vertices
    for i in range(len(verts)):
        u, v = int(verts[i]), int(verts[(i + 1) % len(verts)])
        e = edge_index.get((u, v) if u < v else (v, u))
        if e is None:
            continue
        for ti in t.edge_tris[e]:
            if ti != -1 and not kept_tri[ti]:
                tri = t.triangles[ti]
                c = t.points[tri].mean(axis=0)
                return float(c[0]), float(c[1])
    c = ring.coords.mean(axis=0)
    return float(c[0]), float(c[1])


@dataclass(frozen=True)
class FiltrationCurve:
    """Connected-component counts of the thresholded edge graph as a step
    function of the threshold.  Components with a single vertex are counted
    separately (the outlier series of the topology chart)."""

    thresholds: np.ndarray        # sorted distinct edge lengths
    multi_components: np.ndarray  # components with >= 2 vertices, per threshold
    singletons: np.ndarray        # isolated vertices, per threshold
    merge_events: tuple[tuple[float, tuple[int, int]], ...]
    n_vertices: int

    @property
    def epsilon_max(self) -> float:
        return float(self.thresholds[-1])

    def at(self, epsilon: float) -> tuple[int, int]:
        """(multi-vertex components, singletons) for the given threshold."""
        idx = int(np.searchsorted(self.thresholds, epsilon, side="right")) - 1
        if idx < 0:
            return 0, self.n_vertices
        return int(self.multi_components[idx]), int(self.singletons[idx])

    def to_dict(self) -> dict:
        return {
            "thresholds": [float(v) for v in self.thresholds],
            "multi_components": [int(v) for v in self.multi_components],
            "singletons": [int(v) for v in self.singletons],
            "merge_events": [
                [float(eps), [int(a), int(b)]] for eps, (a, b) in self.merge_events
            ],
            "n_vertices": self.n_vertices,
        }


def filtration_curve(t: Triangulation) -> FiltrationCurve:
    """Kruskal-style sweep over the Delaunay edges in ascending length,
    recording component counts after each distinct threshold."""
    n = t.n_vertices
    order = np.lexsort((t.edges[:, 1], t.edges[:, 0], t.edge_lengths))

    ds = DisjointSet(t.vertices)
    comp_min = {int(v): int(v) for v in t.vertices}  # stable component label
    singles = n
    multi = 0

    thresholds: list[float] = []
    multis: list[int] = []
    singletons: list[int] = []
    merges: list[tuple[float, tuple[int, int]]] = []

    i = 0
    lengths = t.edge_lengths
    edges = t.edges
    m = len(edges)
    while i < m:
        e = order[i]
        thr = float(lengths[e])
        j = i
        while j < m and lengths[order[j]] == thr:
            e = int(order[j])
            u, v = int(edges[e, 0]), int(edges[e, 1])
            ru, rv = ds.find(u), ds.find(v)
            if ru != rv:
                su, sv = ds.size[ru], ds.size[rv]
                la, lb = comp_min[ru], comp_min[rv]
                merges.append((thr, (min(la, lb), max(la, lb))))
                ds.union(ru, rv)
                root = ds.find(ru)
                comp_min[root] = min(la, lb)
                if su == 1 and sv == 1:
                    singles -= 2
                    multi += 1
                elif su == 1 or sv == 1:
                    singles -= 1
                else:
                    multi -= 1
            j += 1
        thresholds.append(thr)
        multis.append(multi)
        singletons.append(singles)
        i = j

    return FiltrationCurve(
        thresholds=np.asarray(thresholds),
        multi_components=np.asarray(multis, dtype=np.int64),
        singletons=np.asarray(singletons, dtype=np.int64),
        merge_events=tuple(merges),
        n_vertices=n,
    )
