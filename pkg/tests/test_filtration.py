import math

import numpy as np
import pytest

from rangesets.errors import InconsistentInput, NegativeEpsilon
from rangesets.filtration import (
    EDGE_LENGTH,
    TRIANGLE_AREA,
    _point_in_ring,
    extract_boundary,
    filter_complex,
    filtration_curve,
)
from rangesets.geometry import convex_hull, delaunay_triangulate

WING = [(0.0, 0.0), (1.0, 0.0), (0.5, 1.0), (0.5, -1.0)]


def equilateral(side=1.0):
    return [(0.0, 0.0), (side, 0.0), (side / 2, side * math.sqrt(3) / 2)]


def annulus_points():
    """12 points on radius 2 plus 12 slightly jittered points on radius 1;
    the jitter avoids exactly-cocircular inner rings."""
    ang = np.linspace(0, 2 * np.pi, 12, endpoint=False)
    outer = np.c_[2 * np.cos(ang), 2 * np.sin(ang)]
    radii = 1.0 + 1e-3 * np.cos(5 * ang)
    inner = np.c_[np.cos(ang), np.sin(ang)] * radii[:, None]
    return np.vstack([outer, inner])


def components_oracle(n_vertices, edges):
    """Independent connectivity oracle: BFS over an adjacency list."""
    adj = {v: [] for v in range(n_vertices)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = set()
    multi = singles = 0
    for s in range(n_vertices):
        if s in seen:
            continue
        queue = [s]
        seen.add(s)
        size = 0
        while queue:
            u = queue.pop()
            size += 1
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if size == 1:
            singles += 1
        else:
            multi += 1
    return multi, singles


class TestFilterComplex:
    def test_all_edges_too_long(self):
        t = delaunay_triangulate(equilateral(1.0))
        fc = filter_complex(t, 0.5)
        assert len(fc.kept_triangles) == 0
        assert fc.outliers.tolist() == [0, 1, 2]

    def test_inclusive_boundary(self):
        t = delaunay_triangulate(equilateral(1.0))
        fc = filter_complex(t, 1.0)
        assert len(fc.kept_triangles) == 1
        assert len(fc.outliers) == 0

    def test_wing_intermediate(self):
        # edge (0,1) has length 1, the slanted edges sqrt(1.25) ~ 1.118
        t = delaunay_triangulate(WING)
        fc = filter_complex(t, 1.05)
        assert len(fc.kept_triangles) == 0
        kept = t.edges[fc.kept_edges].tolist()
        assert kept == [[0, 1]]
        assert fc.outliers.tolist() == [2, 3]
        assert fc.covered_vertices.tolist() == []
        assert fc.uncovered.tolist() == [0, 1]

    def test_negative_epsilon(self):
        t = delaunay_triangulate(WING)
        with pytest.raises(NegativeEpsilon):
            filter_complex(t, -0.1)

    def test_unknown_mode(self):
        t = delaunay_triangulate(WING)
        with pytest.raises(ValueError):
            filter_complex(t, 1.0, mode="perimeter")

    def test_nesting_monotone(self, rng):
        pts = rng.random((70, 2))
        t = delaunay_triangulate(pts)
        eps_values = np.sort(rng.uniform(0, t.epsilon_max * 1.1, size=12))
        prev_tris = set()
        prev_edges = set()
        for eps in eps_values:
            fc = filter_complex(t, float(eps))
            tris = set(fc.kept_triangles.tolist())
            edges = set(fc.kept_edges.tolist())
            assert prev_tris <= tris
            assert prev_edges <= edges
            prev_tris, prev_edges = tris, edges

    def test_area_mode(self):
        # two triangles: a small one and a large one
        pts = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.3), (0.5, 5.0)]
        t = delaunay_triangulate(pts)
        areas = np.sort(t.triangle_areas())
        fc = filter_complex(t, float(areas[0]), mode=TRIANGLE_AREA)
        assert len(fc.kept_triangles) >= 1
        # bounding edges of kept triangles are included, nothing else
        kept_edges = set(fc.kept_edges.tolist())
        expected = set()
        for ti in fc.kept_triangles:
            expected.update(int(e) for e in t.tri_edges[ti])
        assert kept_edges == expected

    def test_area_mode_nesting(self, rng):
        pts = rng.random((50, 2))
        t = delaunay_triangulate(pts)
        areas = t.triangle_areas()
        prev = set()
        for eps in np.sort(rng.uniform(0, areas.max() * 1.1, size=8)):
            fc = filter_complex(t, float(eps), mode=TRIANGLE_AREA)
            tris = set(fc.kept_triangles.tolist())
            assert prev <= tris
            prev = tris


class TestExtractBoundary:
    def test_single_triangle(self):
        t = delaunay_triangulate(equilateral(1.0))
        geos = extract_boundary(filter_complex(t, 1.0), t)
        assert len(geos) == 1
        (ring,) = geos[0].rings
        assert len(ring.vertices) == 3
        assert not ring.is_hole
        assert ring.signed_area == pytest.approx(math.sqrt(3) / 4)

    def test_two_triangles_one_quad_ring(self):
        t = delaunay_triangulate(WING)
        geos = extract_boundary(filter_complex(t, 2.0), t)
        assert len(geos) == 1
        (ring,) = geos[0].rings
        assert len(ring.vertices) == 4  # shared edge is internal

    def test_inconsistent_input(self):
        t1 = delaunay_triangulate(WING)
        t2 = delaunay_triangulate(equilateral())
        with pytest.raises(InconsistentInput):
            extract_boundary(filter_complex(t1, 1.0), t2)

    def test_no_triangles_no_geometry(self):
        t = delaunay_triangulate(WING)
        assert extract_boundary(filter_complex(t, 0.5), t) == []

    def test_annulus_hole(self):
        pts = annulus_points()
        t = delaunay_triangulate(pts)
        fc = filter_complex(t, 1.3)
        geos = extract_boundary(fc, t)
        assert len(geos) == 1
        assert geos[0].hole_count == 1
        holes = [r for r in geos[0].rings if r.is_hole]
        outers = [r for r in geos[0].rings if not r.is_hole]
        assert len(outers) == 1
        assert holes[0].parent == geos[0].rings.index(outers[0])
        # the hole winds clockwise and contains the origin
        assert holes[0].signed_area < 0
        assert _point_in_ring(0.0, 0.0, holes[0].coords)

    def test_annulus_rasterized_oracle(self, rng):
        # coverage by kept triangles must equal even-odd containment in rings
        pts = annulus_points()
        t = delaunay_triangulate(pts)
        fc = filter_complex(t, 1.3)
        geos = extract_boundary(fc, t)
        rings = [r for g in geos for r in g.rings]
        tris = t.points[t.triangles[fc.kept_triangles]]

        def in_triangle(p, tri):
            d = []
            for i in range(3):
                a, b = tri[i], tri[(i + 1) % 3]
                d.append((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]))
            return all(v >= 0 for v in d) or all(v <= 0 for v in d)

        mismatches = 0
        for p in rng.uniform(-2.2, 2.2, size=(500, 2)):
            covered = any(in_triangle(p, tri) for tri in tris)
            in_rings = sum(_point_in_ring(p[0], p[1], r.coords) for r in rings) % 2 == 1
            mismatches += covered != in_rings
        assert mismatches == 0

    def test_touching_components_stay_separate(self):
        # two triangles meeting at one vertex only: two geometries with one
        # simple 3-ring each, not one figure-eight
        pts = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.4), (-1.0, 0.0), (-0.5, -0.4)]
        t = delaunay_triangulate(pts)
        fc = filter_complex(t, 1.1)
        assert len(fc.kept_triangles) == 2
        geos = extract_boundary(fc, t)
        assert len(geos) == 2
        for g in geos:
            (ring,) = g.rings
            assert len(set(ring.vertices.tolist())) == 3

    def test_pinch_vertex_within_component(self):
        # frozen random instance where one component's boundary passes twice
        # through the same vertex; all rings must stay simple
        r = np.random.default_rng(132)
        pts = r.random((35, 2))
        t = delaunay_triangulate(pts)
        fc = filter_complex(t, 0.19947003297369761)
        geos = extract_boundary(fc, t)
        rings = [ring for g in geos for ring in g.rings]
        pinch_vertices = {}
        for ring in rings:
            assert len(set(ring.vertices.tolist())) == len(ring.vertices)
            for v in ring.vertices.tolist():
                pinch_vertices[v] = pinch_vertices.get(v, 0) + 1
        # the pinch shows up as a vertex used by two rings
        assert max(pinch_vertices.values()) == 2
        poly = sum(g.area for g in geos)
        tri = float(t.triangle_areas()[fc.kept_triangles].sum())
        assert poly == pytest.approx(tri, rel=1e-9)

    def test_convex_hull_limit(self, rng):
        for _ in range(8):
            pts = rng.random((int(rng.integers(5, 90)), 2))
            t = delaunay_triangulate(pts)
            geos = extract_boundary(filter_complex(t, t.epsilon_max), t)
            assert len(geos) == 1
            assert len(geos[0].rings) == 1
            ring = geos[0].rings[0].vertices.tolist()
            hull = convex_hull(pts).tolist()
            i = ring.index(min(ring))
            j = hull.index(min(hull))
            assert ring[i:] + ring[:i] == hull[j:] + hull[:j]

    def test_area_conservation(self, rng):
        for _ in range(6):
            pts = rng.random((60, 2))
            t = delaunay_triangulate(pts)
            for q in (0.3, 0.6, 1.0):
                fc = filter_complex(t, float(np.quantile(t.edge_lengths, q)))
                geos = extract_boundary(fc, t)
                poly = sum(g.area for g in geos)
                tri = float(t.triangle_areas()[fc.kept_triangles].sum())
                assert poly == pytest.approx(tri, rel=1e-9, abs=1e-12)

    def test_ring_orientations(self, rng):
        pts = annulus_points()
        t = delaunay_triangulate(pts)
        geos = extract_boundary(filter_complex(t, 1.3), t)
        for g in geos:
            for r in g.rings:
                assert r.is_hole == (r.signed_area < 0)
                # simple rings: no repeated vertices
                assert len(set(r.vertices.tolist())) == len(r.vertices)


class TestFiltrationCurve:
    def test_wing_thresholds(self):
        t = delaunay_triangulate(WING)
        c = filtration_curve(t)
        assert np.allclose(c.thresholds, [1.0, math.sqrt(1.25)])
        assert c.at(0.999) == (0, 4)
        assert c.at(1.0) == (1, 2)
        assert c.at(math.sqrt(1.25)) == (1, 0)

    def test_limits(self, rng):
        pts = rng.random((40, 2))
        t = delaunay_triangulate(pts)
        c = filtration_curve(t)
        assert c.at(0.0) == (0, 40)
        assert c.at(c.epsilon_max) == (1, 0)
        assert c.at(float(c.thresholds[0]) * 0.99) == (0, 40)

    def test_monotonicity(self, rng):
        pts = rng.random((60, 2))
        c = filtration_curve(delaunay_triangulate(pts))
        singles = c.singletons
        total = c.multi_components + c.singletons
        assert (np.diff(singles) <= 0).all()
        assert (np.diff(total) <= 0).all()

    def test_matches_bfs_oracle(self, rng):
        for _ in range(10):
            n = int(rng.integers(5, 90))
            pts = rng.random((n, 2))
            t = delaunay_triangulate(pts)
            c = filtration_curve(t)
            for eps in rng.uniform(0, t.epsilon_max * 1.05, size=12):
                kept = t.edges[t.edge_lengths <= eps].tolist()
                assert c.at(float(eps)) == components_oracle(n, kept)

    def test_merge_events_cover_all_vertices(self, rng):
        pts = rng.random((30, 2))
        c = filtration_curve(delaunay_triangulate(pts))
        # n-1 merges connect n vertices
        assert len(c.merge_events) == 29
        eps_sequence = [e for e, _ in c.merge_events]
        assert eps_sequence == sorted(eps_sequence)

    def test_serialization_round_trip(self, rng):
        pts = rng.random((15, 2))
        c = filtration_curve(delaunay_triangulate(pts))
        d = c.to_dict()
        assert d["n_vertices"] == 15
        assert len(d["thresholds"]) == len(d["multi_components"]) == len(d["singletons"])
