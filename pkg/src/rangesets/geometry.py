"""Planar Delaunay triangulation, convex hull and edge tables.

The triangulation is built incrementally: points are sorted by distance
from the circumcenter of a small seed triangle, each new point is attached
to the visible part of the advancing convex hull, and new edges are
legalized with in-circle flips.  All orientation / in-circle decisions go
through the adaptive predicates, so degenerate inputs (grids, duplicated
projections) are handled exactly rather than by luck.

Duplicate points closer than 1e-12 times the bounding-box diagonal are
merged onto one representative vertex before triangulating; the mapping is
kept on the result so callers can re-expand point memberships.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import as_points
from .errors import AllCollinear, TooFewPoints
from .predicates import incircle, orient2d

DEDUP_RELATIVE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Triangulation:
    """Immutable Delaunay triangulation over (a deduplicated subset of) the
    input points.  Vertex ids are indices into ``points`` (input order)."""

    points: np.ndarray        # (n, 2) float64, the original input points
    triangles: np.ndarray     # (t, 3) int32, counter-clockwise vertex ids
    edges: np.ndarray         # (m, 2) int32, unique edges with u < v
    edge_lengths: np.ndarray  # (m,) float64 Euclidean lengths
    tri_edges: np.ndarray     # (t, 3) int32, edge index of each triangle side
    edge_tris: np.ndarray     # (m, 2) int32, incident triangles, -1 if none
    hull: np.ndarray          # (h,) int32, convex hull ring, counter-clockwise
    representative: np.ndarray  # (n,) int32, representative vertex per input id
    vertices: np.ndarray      # (v,) int32, sorted representative vertex ids

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def epsilon_max(self) -> float:
        """Length of the longest Delaunay edge."""
        return float(self.edge_lengths.max())

    def triangle_areas(self) -> np.ndarray:
        p = self.points
        a, b, c = (p[self.triangles[:, i]] for i in range(3))
        return 0.5 * ((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1])
                      - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))

    def triangle_max_edge(self) -> np.ndarray:
        return self.edge_lengths[self.tri_edges].max(axis=1)

    def expand(self, vertex_ids) -> np.ndarray:
        """Map representative vertex ids back to all merged input ids."""
        vertex_ids = np.asarray(vertex_ids, dtype=np.int32)
        mask = np.isin(self.representative, vertex_ids)
        return np.nonzero(mask)[0].astype(np.int32)


def merge_duplicates(points: np.ndarray) -> np.ndarray:
    """Representative id per point; points closer than the dedup tolerance
    share the group's smallest input index."""
    n = len(points)
    rep = np.arange(n, dtype=np.int32)
    if n < 2:
        return rep
    mins = points.min(axis=0)
    maxs = points.max(axis=0)
    diag = float(math.hypot(*(maxs - mins)))
    if diag == 0.0:
        rep[:] = 0
        return rep
    tol = DEDUP_RELATIVE_TOLERANCE * diag

    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    cells: dict[tuple[int, int], list[int]] = {}
    xs = points[:, 0].tolist()
    ys = points[:, 1].tolist()
    tol2 = tol * tol
    for i in range(n):
        cx = math.floor(xs[i] / tol)
        cy = math.floor(ys[i] / tol)
        for gx in (cx - 1, cx, cx + 1):
            for gy in (cy - 1, cy, cy + 1):
                for j in cells.get((gx, gy), ()):
                    dx = xs[i] - xs[j]
                    dy = ys[i] - ys[j]
                    if dx * dx + dy * dy < tol2:
                        ri, rj = find(i), find(j)
                        if ri != rj:
                            parent[max(ri, rj)] = min(ri, rj)
        cells.setdefault((cx, cy), []).append(i)

    for i in range(n):
        rep[i] = find(i)
    return rep


def _circumradius2(ax, ay, bx, by, cx, cy):
    dx = bx - ax
    dy = by - ay
    ex = cx - ax
    ey = cy - ay
    bl = dx * dx + dy * dy
    cl = ex * ex + ey * ey
    d = 2.0 * (dx * ey - dy * ex)
    if d == 0.0:
        return math.inf
    x = (ey * bl - dy * cl) / d
    y = (dx * cl - ex * bl) / d
    return x * x + y * y


def _circumcenter(ax, ay, bx, by, cx, cy):
    dx = bx - ax
    dy = by - ay
    ex = cx - ax
    ey = cy - ay
    bl = dx * dx + dy * dy
    cl = ex * ex + ey * ey
    d = 2.0 * (dx * ey - dy * ex)
    x = ax + (ey * bl - dy * cl) / d
    y = ay + (dx * cl - ex * bl) / d
    return x, y


def _pseudo_angle(dx, dy):
    p = dx / (abs(dx) + abs(dy))
    return (3.0 - p) / 4.0 if dy > 0.0 else (1.0 + p) / 4.0


class _Builder:
    """Incremental hull-based Delaunay over deduplicated local points."""

    def __init__(self, xs: list[float], ys: list[float]):
        self.x = xs
        self.y = ys
        n = len(xs)
        self.triangles: list[int] = []
        self.halfedges: list[int] = []
        self.hull_prev = [0] * n
        self.hull_next = [0] * n
        self.hull_tri = [0] * n
        self.hash_size = max(1, math.ceil(math.sqrt(n)))
        self.hull_hash = [-1] * self.hash_size
        self.hull_start = -1
        self._run()

    # -- construction -----------------------------------------------------

    def _run(self):
        x, y = self.x, self.y
        n = len(x)
        cx = (min(x) + max(x)) / 2.0
        cy = (min(y) + max(y)) / 2.0

        i0 = min(range(n), key=lambda i: (x[i] - cx) ** 2 + (y[i] - cy) ** 2)
        i1 = min((i for i in range(n) if i != i0),
                 key=lambda i: (x[i] - x[i0]) ** 2 + (y[i] - y[i0]) ** 2)

        best = math.inf
        i2 = -1
        for i in range(n):
            if i == i0 or i == i1:
                continue
            r2 = _circumradius2(x[i0], y[i0], x[i1], y[i1], x[i], y[i])
            if r2 < best:
                best = r2
                i2 = i
        if i2 == -1 or not math.isfinite(best):
            raise AllCollinear("all points lie on one line")

        if orient2d(x[i0], y[i0], x[i1], y[i1], x[i2], y[i2]) < 0:
            i1, i2 = i2, i1

        self.cx, self.cy = _circumcenter(x[i0], y[i0], x[i1], y[i1], x[i2], y[i2])
        order = np.argsort(
            (np.asarray(x) - self.cx) ** 2 + (np.asarray(y) - self.cy) ** 2,
            kind="stable",
        )

        self.hull_start = i0
        self.hull_next[i0] = self.hull_prev[i2] = i1
        self.hull_next[i1] = self.hull_prev[i0] = i2
        self.hull_next[i2] = self.hull_prev[i1] = i0
        self.hull_tri[i0] = 0
        self.hull_tri[i1] = 1
        self.hull_tri[i2] = 2
        self.hull_hash[self._hash_key(x[i0], y[i0])] = i0
        self.hull_hash[self._hash_key(x[i1], y[i1])] = i1
        self.hull_hash[self._hash_key(x[i2], y[i2])] = i2
        self._add_triangle(i0, i1, i2, -1, -1, -1)

        for k in order:
            k = int(k)
            if k == i0 or k == i1 or k == i2:
                continue
            self._insert(k)

    def _hash_key(self, px, py):
        return int(self.hash_size * _pseudo_angle(px - self.cx, py - self.cy)) % self.hash_size

    def _insert(self, k):
        x, y = self.x, self.y
        px, py = x[k], y[k]
        hull_next, hull_prev, hull_tri = self.hull_next, self.hull_prev, self.hull_tri

        start = -1
        key = self._hash_key(px, py)
        for j in range(self.hash_size):
            start = self.hull_hash[(key + j) % self.hash_size]
            if start != -1 and start != hull_next[start]:
                break

        start = hull_prev[start]
        e = start
        while True:
            q = hull_next[e]
            if orient2d(px, py, x[e], y[e], x[q], y[q]) < 0:
                break
            e = q
            if e == start:  # pragma: no cover
                raise RuntimeError("no hull edge visible from inserted point")
        first = e

        q = hull_next[e]
        t = self._add_triangle(e, k, q, -1, -1, hull_tri[e])
        hull_tri[k] = self._legalize(t + 2)
        hull_tri[e] = t

        # advance forward over every further visible hull edge
        nxt = q
        while True:
            q = hull_next[nxt]
            if orient2d(px, py, x[nxt], y[nxt], x[q], y[q]) >= 0:
                break
            t = self._add_triangle(nxt, k, q, hull_tri[k], -1, hull_tri[nxt])
            hull_tri[k] = self._legalize(t + 2)
            hull_next[nxt] = nxt  # mark removed
            nxt = q

        # walk backward if the start edge was the first visible one
        if first == start:
            e = first
            while True:
                q = hull_prev[e]
                if orient2d(px, py, x[q], y[q], x[e], y[e]) >= 0:
                    break
                t = self._add_triangle(q, k, e, -1, hull_tri[e], hull_tri[q])
                self._legalize(t + 2)
                hull_tri[q] = t
                hull_next[e] = e  # mark removed
                e = q

        self.hull_start = e
        hull_prev[k] = e
        hull_next[e] = k
        hull_prev[nxt] = k
        hull_next[k] = nxt
        self.hull_hash[self._hash_key(px, py)] = k
        self.hull_hash[self._hash_key(x[e], y[e])] = e

    def _add_triangle(self, i0, i1, i2, a, b, c):
        t = len(self.triangles)
        self.triangles.extend((i0, i1, i2))
        self.halfedges.extend((-1, -1, -1))
        self._link(t, a)
        self._link(t + 1, b)
        self._link(t + 2, c)
        return t

    def _link(self, a, b):
        self.halfedges[a] = b
        if b != -1:
            self.halfedges[b] = a

    def _legalize(self, a):
        triangles, halfedges = self.triangles, self.halfedges
        x, y = self.x, self.y
        stack: list[int] = []
        ar = 0
        while True:
            b = halfedges[a]
            a0 = a - a % 3
            ar = a0 + (a + 2) % 3
            if b == -1:
                if not stack:
                    break
                a = stack.pop()
                continue
            b0 = b - b % 3
            al = a0 + (a + 1) % 3
            bl = b0 + (b + 2) % 3
            p0 = triangles[ar]
            pr = triangles[a]
            pl = triangles[al]
            p1 = triangles[bl]

            # the shared edge (pr, pl) is illegal iff the opposite vertex of
            # the twin triangle falls strictly inside our circumcircle
            if incircle(x[pr], y[pr], x[pl], y[pl], x[p0], y[p0], x[p1], y[p1]) > 0:
                triangles[a] = p1
                triangles[b] = p0
                hbl = halfedges[bl]
                if hbl == -1:
                    e = self.hull_start
                    while True:
                        if self.hull_tri[e] == bl:
                            self.hull_tri[e] = a
                            break
                        e = self.hull_prev[e]
                        if e == self.hull_start:  # pragma: no cover
                            break
                self._link(a, hbl)
                self._link(b, halfedges[ar])
                self._link(ar, bl)
                stack.append(b0 + (b + 1) % 3)
            else:
                if not stack:
                    break
                a = stack.pop()
        return ar

    # -- cocircular tie canonicalization ----------------------------------

    def canonicalize(self, global_ids: list[int]):
        """Resolve exactly-cocircular quads deterministically: keep the
        diagonal whose (global) vertex-index pair is lexicographically
        smallest, independent of insertion order."""
        triangles, halfedges = self.triangles, self.halfedges
        x, y = self.x, self.y

        def key(u, v):
            gu, gv = global_ids[u], global_ids[v]
            return (gu, gv) if gu < gv else (gv, gu)

        changed = True
        while changed:
            changed = False
            for a in range(len(triangles)):
                b = halfedges[a]
                if b == -1 or b < a:
                    continue
                a0 = a - a % 3
                b0 = b - b % 3
                al = a0 + (a + 1) % 3
                ar = a0 + (a + 2) % 3
                bl = b0 + (b + 2) % 3
                u = triangles[a]
                v = triangles[al]
                w1 = triangles[ar]
                w2 = triangles[bl]
                if incircle(x[u], y[u], x[v], y[v], x[w1], y[w1], x[w2], y[w2]) != 0:
                    continue
                if key(w1, w2) >= key(u, v):
                    continue
                triangles[a] = w2
                triangles[b] = w1
                hbl = halfedges[bl]
                har = halfedges[ar]
                self._link(a, hbl)
                self._link(b, har)
                self._link(ar, bl)
                changed = True

    def hull_ring(self) -> list[int]:
        ring = [self.hull_start]
        v = self.hull_next[self.hull_start]
        while v != self.hull_start:
            ring.append(v)
            v = self.hull_next[v]
        return ring


def delaunay_triangulate(points) -> Triangulation:
    """Delaunay triangulation of a 2D point set.

    Raises TooFewPoints if fewer than 3 distinct points remain after
    duplicate merging and AllCollinear when no triangle exists; callers are
    expected to fall back to edge-only / point-only handling.
    """
    pts = as_points(points)
    rep = merge_duplicates(pts)
    active = np.unique(rep)
    if len(active) < 3:
        raise TooFewPoints(
            f"need at least 3 distinct points, got {len(active)} after merging"
        )

    global_ids = active.tolist()
    xs = pts[active, 0].tolist()
    ys = pts[active, 1].tolist()

    builder = _Builder(xs, ys)
    hull_local = builder.hull_ring()
    builder.canonicalize(global_ids)

    tris_local = np.asarray(builder.triangles, dtype=np.int64).reshape(-1, 3)
    tris = active[tris_local].astype(np.int32)

    # canonical ordering: rotate each triangle to start at its smallest
    # vertex (rotation keeps orientation), then sort rows
    roll = np.argmin(tris, axis=1)
    cols = (np.arange(3)[None, :] + roll[:, None]) % 3
    tris = np.take_along_axis(tris, cols, axis=1)
    order = np.lexsort((tris[:, 2], tris[:, 1], tris[:, 0]))
    tris = tris[order]

    sides = np.stack(
        [tris[:, [0, 1]], tris[:, [1, 2]], tris[:, [2, 0]]], axis=1
    )  # (t, 3, 2)
    sides_sorted = np.sort(sides.reshape(-1, 2), axis=1)
    edges, inverse = np.unique(sides_sorted, axis=0, return_inverse=True)
    tri_edges = inverse.reshape(-1, 3).astype(np.int32)

    edge_tris = np.full((len(edges), 2), -1, dtype=np.int32)
    slot = np.zeros(len(edges), dtype=np.int8)
    for t_idx in range(len(tris)):
        for e_idx in tri_edges[t_idx]:
            edge_tris[e_idx, slot[e_idx]] = t_idx
            slot[e_idx] += 1

    diffs = pts[edges[:, 0]] - pts[edges[:, 1]]
    lengths = np.hypot(diffs[:, 0], diffs[:, 1])

    hull = active[np.asarray(hull_local, dtype=np.int64)].astype(np.int32)
    shift = int(np.argmin(hull))
    hull = np.roll(hull, -shift)

    for arr in (tris, edges, lengths, tri_edges, edge_tris, hull, rep, active):
        arr.setflags(write=False)

    return Triangulation(
        points=pts,
        triangles=tris,
        edges=edges.astype(np.int32),
        edge_lengths=lengths,
        tri_edges=tri_edges,
        edge_tris=edge_tris,
        hull=hull,
        representative=rep,
        vertices=active.astype(np.int32),
    )


def convex_hull(points) -> np.ndarray:
    """Counter-clockwise convex hull ring (vertex ids, collinear boundary
    points excluded), computed by monotone chain with exact orientation."""
    pts = as_points(points)
    rep = merge_duplicates(pts)
    active = np.unique(rep)
    if len(active) < 3:
        raise TooFewPoints(
            f"need at least 3 distinct points, got {len(active)} after merging"
        )
    order = active[np.lexsort((pts[active, 1], pts[active, 0]))]
    xs, ys = pts[:, 0], pts[:, 1]

    def build(ids):
        chain: list[int] = []
        for i in ids:
            while len(chain) >= 2:
                a, b = chain[-2], chain[-1]
                if orient2d(xs[a], ys[a], xs[b], ys[b], xs[i], ys[i]) <= 0:
                    chain.pop()
                else:
                    break
            chain.append(int(i))
        return chain

    lower = build(order)
    upper = build(order[::-1])
    if len(lower) < 2 or len(lower) + len(upper) - 2 < 3:
        raise AllCollinear("all points lie on one line")
    ring = np.asarray(lower[:-1] + upper[:-1], dtype=np.int32)
    shift = int(np.argmin(ring))
    ring = np.roll(ring, -shift)
    ring.setflags(write=False)
    return ring


def edge_lengths(t: Triangulation) -> list[tuple[tuple[int, int], float]]:
    """Unique Delaunay edges with their Euclidean lengths."""
    return [
        ((int(u), int(v)), float(l))
        for (u, v), l in zip(t.edges, t.edge_lengths)
    ]
