"""HTTP/JSON API backing the interactive explorer.

All endpoints serve canonical-JSON fragments produced by the same builders
as the batch pipeline, so API responses and batch documents are
byte-identical for identical parameters.  Parameterized rangeset requests
are cached; a newer request for the same attribute supersedes an in-flight
computation (latest-wins)."""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Request, Response
from fastapi.staticfiles import StaticFiles

from .config import SessionConfig
from .document import (
    PipelineState,
    canonical_json,
    dataset_fragment,
    embedding_fragment,
    histogram_fragment,
    prepare_pipeline,
    quality_fragment,
    rangeset_fragment,
    topology_fragment,
)
from .errors import ComputationSuperseded, RangesetsError, UnknownAttribute
from .binning import categorize
from .filtration import EDGE_LENGTH
from .pipeline import compute_rangeset


class LatestWins:
    """Generation counters per session key for cooperative cancellation."""

    def __init__(self):
        self._gen: dict[str, int] = {}
        self._lock = threading.Lock()

    def begin(self, key: str) -> int:
        with self._lock:
            token = self._gen.get(key, 0) + 1
            self._gen[key] = token
            return token

    def is_current(self, key: str, token: int) -> bool:
        with self._lock:
            return self._gen.get(key, 0) == token


def _json_response(fragment) -> Response:
    return Response(content=canonical_json(fragment), media_type="application/json")


class ExplorerService:
    """Holds the immutable pipeline state plus a result cache."""

    def __init__(self, config: SessionConfig):
        self.config_version = 1
        self.state: PipelineState = prepare_pipeline(config)
        self.latest = LatestWins()
        self._cache: dict[tuple, bytes] = {}
        self._cache_lock = threading.Lock()
        self._inflight: dict[tuple, dict] = {}
        self._inflight_lock = threading.Lock()

    @property
    def config(self) -> SessionConfig:
        return self.state.config

    def replace_config(self, config: SessionConfig) -> None:
        self.state = prepare_pipeline(config)
        self.config_version += 1
        with self._cache_lock:
            self._cache.clear()

    def rangeset_bytes(self, attr: str, epsilon: float | None,
                       bins: int | None, mode: str | None,
                       user_range: tuple[float, float] | None = None) -> bytes:
        state = self.state
        if attr not in {c.name for c in state.dataset.columns}:
            raise UnknownAttribute(f"unknown attribute {attr!r}")
        key = (self.config_version, attr, epsilon, bins, mode, user_range)
        with self._cache_lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached

        # coalesce identical concurrent requests: only the first one
        # computes, the rest wait; a request only supersedes computations
        # with *different* parameters for the same attribute
        with self._inflight_lock:
            entry = self._inflight.get(key)
            owner = entry is None
            if owner:
                entry = {"done": threading.Event(), "payload": None, "error": None}
                self._inflight[key] = entry
        if not owner:
            entry["done"].wait()
            if entry["error"] is not None:
                raise entry["error"]
            return entry["payload"]

        try:
            session_key = f"rangeset:{attr}"
            token = self.latest.begin(session_key)
            rs, binned = state.compute(
                attr, epsilon=epsilon, bin_count=bins, mode=mode, user_range=user_range,
                should_abort=lambda: not self.latest.is_current(session_key, token),
            )
            payload = canonical_json(rangeset_fragment(rs))
            with self._cache_lock:
                self._cache[key] = payload
                self._cache[("histogram",) + key] = canonical_json(histogram_fragment(binned))
            entry["payload"] = payload
            return payload
        except Exception as exc:
            entry["error"] = exc
            raise
        finally:
            entry["done"].set()
            with self._inflight_lock:
                self._inflight.pop(key, None)

    def histogram_bytes(self, attr: str, epsilon: float | None,
                        bins: int | None, mode: str | None,
                        user_range: tuple[float, float] | None = None) -> bytes:
        key = ("histogram", self.config_version, attr, epsilon, bins, mode, user_range)
        with self._cache_lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached
        self.rangeset_bytes(attr, epsilon, bins, mode, user_range)
        with self._cache_lock:
            return self._cache[key]


def create_app(config: SessionConfig, frontend_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="rangesets explorer")
    service = ExplorerService(config)
    app.state.service = service

    @app.exception_handler(RangesetsError)
    async def _domain_error(request: Request, exc: RangesetsError):
        status = 409 if isinstance(exc, ComputationSuperseded) else 400
        if isinstance(exc, UnknownAttribute):
            status = 404
        return Response(
            content=canonical_json({"error": type(exc).__name__, "detail": str(exc)}),
            status_code=status,
            media_type="application/json",
        )

    @app.get("/api/dataset")
    def get_dataset():
        st = service.state
        return _json_response(dataset_fragment(st.dataset, st.selected))

    @app.get("/api/embedding")
    def get_embedding():
        st = service.state
        return _json_response(
            embedding_fragment(
                st.coords, st.row_ids, st.embedding,
                st.epsilon, st.epsilon_source, st.suggested,
            )
        )

    @app.get("/api/topology")
    def get_topology():
        return _json_response(topology_fragment(service.state.curve))

    @app.get("/api/quality")
    def get_quality():
        st = service.state
        quality = st.embedding.quality if st.embedding is not None else None
        k = min(st.config.quality_k, len(st.coords) - 1)
        return _json_response(quality_fragment(quality, k))

    def _range(lo: float | None, hi: float | None) -> tuple[float, float] | None:
        if lo is None or hi is None:
            return None
        if not lo < hi:
            raise HTTPException(status_code=400, detail="need lo < hi")
        return (lo, hi)

    @app.get("/api/rangeset")
    def get_rangeset(
        attr: str = Query(...),
        eps: float | None = Query(default=None, ge=0.0),
        bins: int | None = Query(default=None, ge=1),
        mode: str | None = Query(default=None),
        lo: float | None = Query(default=None),
        hi: float | None = Query(default=None),
    ):
        payload = service.rangeset_bytes(attr, eps, bins, mode, _range(lo, hi))
        return Response(content=payload, media_type="application/json")

    @app.get("/api/histogram")
    def get_histogram(
        attr: str = Query(...),
        eps: float | None = Query(default=None, ge=0.0),
        bins: int | None = Query(default=None, ge=1),
        mode: str | None = Query(default=None),
        lo: float | None = Query(default=None),
        hi: float | None = Query(default=None),
    ):
        payload = service.histogram_bytes(attr, eps, bins, mode, _range(lo, hi))
        return Response(content=payload, media_type="application/json")

    @app.get("/api/config")
    def get_config():
        return _json_response(
            {"version": service.config_version, "config": service.config.to_dict()}
        )

    @app.put("/api/config")
    async def put_config(request: Request):
        body = await request.json()
        version = body.get("version")
        if version is not None and version != service.config_version:
            raise HTTPException(
                status_code=409,
                detail=f"config version mismatch: have {service.config_version}",
            )
        new_config = SessionConfig.from_dict(body["config"])
        service.replace_config(new_config)
        return _json_response({"version": service.config_version})

    @app.post("/api/outline")
    async def post_outline(request: Request):
        """Tighten a user-drawn selection: contour of the selected ids at
        the given (or session) threshold."""
        body = await request.json()
        ids = [int(i) for i in body.get("ids", [])]
        st = service.state
        eps = float(body.get("eps", st.epsilon))
        n = len(st.coords)
        labels = ["selected" if i in set(ids) else None for i in range(n)]
        try:
            binned = categorize(labels, name="selection")
        except ValueError:
            return _json_response({"polygons": [], "outlier_ids": []})
        rs = compute_rangeset(st.coords, binned, eps, EDGE_LENGTH)
        frag = rangeset_fragment(rs)
        sel_bin = frag["bins"][0]
        return _json_response(
            {"polygons": sel_bin["polygons"], "outlier_ids": sel_bin["outlier_ids"]}
        )

    if frontend_dir and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="frontend")

    return app
