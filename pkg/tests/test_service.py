import json
import threading
import time

import numpy as np
import pytest
from fastapi.testclient import TestClient

from rangesets.document import canonical_json, run_pipeline
from rangesets.errors import ComputationSuperseded
from rangesets.service import LatestWins, create_app


@pytest.fixture(scope="module")
def wine_app(wine_config):
    return create_app(wine_config)


@pytest.fixture(scope="module")
def client(wine_app):
    with TestClient(wine_app) as c:
        yield c


class TestEndpoints:
    def test_dataset(self, client):
        r = client.get("/api/dataset")
        assert r.status_code == 200
        body = r.json()
        assert body["n_rows"] == 178
        assert len(body["attributes"]) == 14
        names = {a["name"] for a in body["attributes"]}
        assert "alcohol" in names and "class" in names

    def test_embedding(self, client):
        body = client.get("/api/embedding").json()
        assert len(body["coords"]) == 178
        assert body["method"] == "classical-mds"
        assert 0.86 <= body["epsilon"]["value"] <= 1.06

    def test_topology(self, client):
        body = client.get("/api/topology").json()
        assert body["n_vertices"] == 178
        assert body["multi_components"][-1] == 1
        assert body["singletons"][-1] == 0

    def test_quality(self, client):
        body = client.get("/api/quality").json()
        assert body["metric"] == "knn-jaccard"
        assert len(body["values"]) == 178
        assert all(0.0 <= v <= 1.0 for v in body["values"])

    def test_rangeset_defaults(self, client):
        body = client.get("/api/rangeset", params={"attr": "alcohol"}).json()
        assert body["attribute"] == "alcohol"
        assert len(body["bins"]) == 5

    def test_rangeset_with_overrides(self, client):
        body = client.get(
            "/api/rangeset", params={"attr": "alcohol", "eps": 2.0, "bins": 3}
        ).json()
        assert body["epsilon"] == 2.0
        assert len(body["bins"]) == 3

    def test_rangeset_range_override(self, client):
        # narrowing the attribute range re-bins on the fly (range sliders)
        body = client.get(
            "/api/rangeset",
            params={"attr": "alcohol", "lo": 12.0, "hi": 14.0},
        ).json()
        h = client.get(
            "/api/histogram",
            params={"attr": "alcohol", "lo": 12.0, "hi": 14.0},
        ).json()
        assert h["bin_edges"][0] == 12.0
        assert h["bin_edges"][-1] == 14.0
        assert sum(h["counts"]) == 178  # clamped, not dropped
        assert len(h["below_range"]) > 0
        assert sum(len(b["member_ids"]) for b in body["bins"]) == 178

    def test_rangeset_bad_range(self, client):
        r = client.get(
            "/api/rangeset", params={"attr": "alcohol", "lo": 14.0, "hi": 12.0}
        )
        assert r.status_code == 400

    def test_rangeset_epsilon_zero(self, client):
        body = client.get("/api/rangeset", params={"attr": "alcohol", "eps": 0.0}).json()
        assert all(b["polygons"] == [] for b in body["bins"])
        total_outliers = sum(len(b["outlier_ids"]) for b in body["bins"])
        assert total_outliers == 178

    def test_rangeset_epsilon_max_single_hull(self, client):
        eps_max = client.get("/api/topology").json()["epsilon_max"]
        body = client.get(
            "/api/rangeset", params={"attr": "alcohol", "eps": eps_max, "bins": 1}
        ).json()
        (b,) = body["bins"]
        assert len(b["polygons"]) == 1
        assert len(b["outlier_ids"]) == 0

    def test_unknown_attribute_404(self, client):
        r = client.get("/api/rangeset", params={"attr": "nope"})
        assert r.status_code == 404
        assert r.json()["error"] == "UnknownAttribute"

    def test_histogram_matches_rangeset_outliers(self, client):
        h = client.get("/api/histogram", params={"attr": "hue"}).json()
        rsj = client.get("/api/rangeset", params={"attr": "hue"}).json()
        assert h["outlier_counts"] == [len(b["outlier_ids"]) for b in rsj["bins"]]
        assert sum(h["counts"]) == 178

    def test_outline_endpoint(self, client):
        r = client.post("/api/outline", json={"ids": list(range(40)), "eps": 2.0})
        assert r.status_code == 200
        body = r.json()
        assert "polygons" in body and "outlier_ids" in body

    def test_outline_empty_selection(self, client):
        r = client.post("/api/outline", json={"ids": []})
        assert r.json() == {"outlier_ids": [], "polygons": []}


class TestBatchServeEquivalence:
    def test_document_equals_api_union(self, client, wine_config):
        doc = run_pipeline(wine_config)
        selected = [
            a["name"]
            for a in client.get("/api/dataset").json()["attributes"]
            if a["selected"]
        ]
        assembled = {
            "schema_version": client.get("/api/dataset").json()["schema_version"],
            "dataset": client.get("/api/dataset").json(),
            "embedding": client.get("/api/embedding").json(),
            "topology": client.get("/api/topology").json(),
            "quality": client.get("/api/quality").json(),
            "rangesets": {
                a: client.get("/api/rangeset", params={"attr": a}).json() for a in selected
            },
            "histograms": {
                a: client.get("/api/histogram", params={"attr": a}).json() for a in selected
            },
        }
        assert canonical_json(assembled) == doc.to_bytes()

    def test_fragment_bytes_identical(self, client, wine_config):
        doc = run_pipeline(wine_config)
        raw = client.get("/api/rangeset", params={"attr": "alcohol"}).content
        assert raw == canonical_json(doc.rangeset_fragment("alcohol"))


class TestConfigEndpoint:
    def test_get_config(self, client):
        body = client.get("/api/config").json()
        assert body["version"] >= 1
        assert body["config"]["epsilon"] == "auto"

    def test_put_config_replaces_and_bumps_version(self, wine_config):
        app = create_app(wine_config)
        with TestClient(app) as c:
            v0 = c.get("/api/config").json()["version"]
            new_cfg = dict(c.get("/api/config").json()["config"])
            new_cfg["epsilon"] = 1.5
            r = c.put("/api/config", json={"version": v0, "config": new_cfg})
            assert r.status_code == 200
            assert r.json()["version"] == v0 + 1
            assert c.get("/api/embedding").json()["epsilon"]["value"] == 1.5

    def test_put_config_version_conflict(self, wine_config):
        app = create_app(wine_config)
        with TestClient(app) as c:
            cfg = c.get("/api/config").json()["config"]
            r = c.put("/api/config", json={"version": 999, "config": cfg})
            assert r.status_code == 409


class TestLatestWins:
    def test_superseded_token_aborts(self):
        lw = LatestWins()
        t1 = lw.begin("k")
        assert lw.is_current("k", t1)
        t2 = lw.begin("k")
        assert not lw.is_current("k", t1)
        assert lw.is_current("k", t2)

    def test_superseded_computation_raises(self, rng):
        from rangesets.binning import AttributeSpec, bin_assign
        from rangesets.pipeline import compute_rangeset

        lw = LatestWins()
        token = lw.begin("rangeset:x")
        lw.begin("rangeset:x")  # a newer request arrives
        pts = rng.random((30, 2))
        binned = bin_assign(rng.random(30), AttributeSpec(name="x", user_range=(0, 1)))
        with pytest.raises(ComputationSuperseded):
            compute_rangeset(
                pts, binned, 0.3,
                should_abort=lambda: not lw.is_current("rangeset:x", token),
            )

    def test_concurrent_scrubbing_last_one_wins(self, wine_config):
        # rapid-fire eps values; every response must either succeed or be a
        # clean 409, and the last value must be servable afterwards
        app = create_app(wine_config)
        with TestClient(app) as c:
            statuses = []

            def hit(eps):
                r = c.get("/api/rangeset", params={"attr": "alcohol", "eps": eps})
                statuses.append(r.status_code)

            threads = [
                threading.Thread(target=hit, args=(0.2 + 0.1 * i,)) for i in range(6)
            ]
            for t in threads:
                t.start()
            for t in threads:
                t.join()
            assert set(statuses) <= {200, 409}
            final = c.get("/api/rangeset", params={"attr": "alcohol", "eps": 0.7})
            assert final.status_code == 200
