"""Batch pipeline and the self-describing result document.

Every fragment builder here is shared with the HTTP service so that batch
output and API responses serialize to identical bytes.  Serialization is
canonical JSON: sorted keys, compact separators, shortest round-trip float
representation, no NaN.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .binning import AttributeSpec, BinnedAttribute, bin_assign, categorize
from .config import SessionConfig
from .dataset import Dataset, load_dataset
from .embedding import (
    METHOD_EXTERNAL,
    EmbeddingResult,
    classical_mds,
    ingest_embedding,
    projection_quality,
    standardize,
)
from .errors import UnknownAttribute
from .filtration import FiltrationCurve, filtration_curve
from .geometry import delaunay_triangulate
from .pipeline import Rangeset, compute_rangeset, suggest_epsilon

SCHEMA_VERSION = 1


def canonical_json(obj) -> bytes:
    return json.dumps(
        obj, sort_keys=True, separators=(",", ":"), allow_nan=False
    ).encode("utf-8")


def _float_or_none(x) -> float | None:
    x = float(x)
    return x if np.isfinite(x) else None


def _ids(arr) -> list[int]:
    return [int(i) for i in arr]


@dataclass
class RangesetDocument:
    """Serializable analysis result: embedding, per-attribute rangesets,
    topology curve, histograms and projection quality."""

    data: dict

    def to_bytes(self) -> bytes:
        return canonical_json(self.data)

    def fragment(self, key: str):
        return self.data[key]

    def rangeset_fragment(self, attribute: str) -> dict:
        try:
            return self.data["rangesets"][attribute]
        except KeyError:
            raise UnknownAttribute(f"no rangeset for attribute {attribute!r}") from None

    def histogram_fragment(self, attribute: str) -> dict:
        try:
            return self.data["histograms"][attribute]
        except KeyError:
            raise UnknownAttribute(f"no histogram for attribute {attribute!r}") from None


# -- fragment builders (shared by batch and service) -----------------------

def dataset_fragment(ds: Dataset, selected: list[str]) -> dict:
    attrs = []
    for col in ds.columns:
        entry = {
            "name": col.name,
            "kind": col.kind,
            "missing_count": col.missing_count,
            "selected": col.name in selected,
        }
        if col.kind == "continuous":
            finite = col.values[np.isfinite(col.values)]
            entry["data_min"] = _float_or_none(finite.min()) if len(finite) else None
            entry["data_max"] = _float_or_none(finite.max()) if len(finite) else None
        else:
            seen = []
            for c in col.categories:
                if c is not None and c not in seen:
                    seen.append(c)
            entry["categories"] = seen
        attrs.append(entry)
    return {
        "schema_version": SCHEMA_VERSION,
        "path": ds.path,
        "fingerprint": ds.fingerprint,
        "n_rows": ds.n_rows,
        "attributes": attrs,
    }


def embedding_fragment(
    coords: np.ndarray,
    row_ids: np.ndarray,
    result: EmbeddingResult | None,
    epsilon: float,
    epsilon_source: str,
    suggested: float | None,
) -> dict:
    return {
        "method": result.method if result is not None else METHOD_EXTERNAL,
        "stress": _float_or_none(result.stress) if result is not None else None,
        "eigenvalue_energy": _float_or_none(result.energy) if result is not None else None,
        "coords": [[float(x), float(y)] for x, y in coords],
        "row_ids": _ids(row_ids),
        "epsilon": {
            "value": float(epsilon),
            "source": epsilon_source,
            "suggested": _float_or_none(suggested) if suggested is not None else None,
        },
    }


def _ring_json(coords: np.ndarray) -> list[list[float]]:
    ring = [[float(x), float(y)] for x, y in coords]
    ring.append(ring[0])  # GeoJSON-style explicit closure
    return ring


def rangeset_fragment(rs: Rangeset) -> dict:
    bins = []
    for b in rs.bins:
        polygons = []
        for geom in b.contours:
            for group in geom.polygons():
                polygons.append([_ring_json(ring) for ring in group])
        bins.append(
            {
                "bin_index": b.bin_index,
                "label": b.label,
                "color": b.color,
                "member_ids": _ids(b.member_ids),
                "covered_ids": _ids(b.covered_ids),
                "outlier_ids": _ids(b.outlier_ids),
                "uncovered_ids": _ids(b.uncovered_ids),
                "polygons": polygons,
                "hole_count": sum(g.hole_count for g in b.contours),
            }
        )
    return {
        "attribute": rs.attribute,
        "epsilon": float(rs.epsilon),
        "mode": rs.mode,
        "bins": bins,
    }


def topology_fragment(curve: FiltrationCurve) -> dict:
    d = curve.to_dict()
    d["epsilon_max"] = _float_or_none(curve.epsilon_max)
    return d


def histogram_fragment(binned: BinnedAttribute) -> dict:
    spec = binned.spec
    frag = {
        "attribute": spec.name,
        "kind": spec.kind,
        "counts": _ids(binned.histogram),
        "labels": list(spec.labels),
        "colors": list(spec.colors),
        "below_range": _ids(binned.below_range),
        "above_range": _ids(binned.above_range),
        "missing_count": int(len(binned.missing)),
        "outlier_counts": _ids(binned.outlier_counts)
        if binned.outlier_counts is not None
        else [0] * spec.bin_count,
    }
    if spec.kind == "continuous":
        frag["bin_edges"] = [float(e) for e in spec.bin_edges()]
    else:
        frag["categories"] = list(binned.categories)
    return frag


def quality_fragment(quality: np.ndarray | None, k: int) -> dict:
    return {
        "metric": "knn-jaccard",
        "k": int(k),
        "values": [] if quality is None else [float(q) for q in quality],
    }


# -- batch pipeline ---------------------------------------------------------

@dataclass
class PipelineState:
    """Rich (non-serialized) pipeline products kept around by the service
    for parameterized recomputation."""

    config: SessionConfig
    dataset: Dataset
    selected: list[str]
    coords: np.ndarray
    row_ids: np.ndarray
    embedding: EmbeddingResult | None
    epsilon: float
    epsilon_source: str
    suggested: float | None
    curve: FiltrationCurve
    binned: dict[str, BinnedAttribute] = field(default_factory=dict)
    rangesets: dict[str, Rangeset] = field(default_factory=dict)

    def attribute_spec(
        self,
        name: str,
        bin_count: int | None = None,
        user_range: tuple[float, float] | None = None,
    ) -> AttributeSpec:
        col = self.dataset.column(name)
        ov = self.config.overrides.get(name)
        if col.kind == "categorical":
            raise ValueError(f"attribute {name!r} is categorical")
        finite = col.values[np.isfinite(col.values)]
        if user_range is None and ov and ov.user_range:
            user_range = tuple(ov.user_range)
        return AttributeSpec(
            name=name,
            data_min=float(finite.min()),
            data_max=float(finite.max()),
            user_range=user_range,
            bin_count=bin_count or (ov.bin_count if ov and ov.bin_count else 5),
            labels=tuple(ov.labels) if ov and ov.labels else (),
            colors=tuple(ov.colors) if ov and ov.colors else (),
        )

    def bin_attribute(
        self,
        name: str,
        bin_count: int | None = None,
        user_range: tuple[float, float] | None = None,
    ) -> BinnedAttribute:
        col = self.dataset.column(name)
        if col.kind == "categorical":
            keys = [col.categories[i] for i in self.row_ids]
            return categorize(keys, name=name)
        values = col.values[self.row_ids]
        return bin_assign(values, self.attribute_spec(name, bin_count, user_range))

    def compute(self, name: str, epsilon: float | None = None,
                bin_count: int | None = None, mode: str | None = None,
                user_range: tuple[float, float] | None = None,
                should_abort=None) -> tuple[Rangeset, BinnedAttribute]:
        binned = self.bin_attribute(name, bin_count, user_range)
        rs = compute_rangeset(
            self.coords,
            binned,
            self.epsilon if epsilon is None else epsilon,
            mode or self.config.mode,
            should_abort=should_abort,
        )
        return rs, binned.with_outlier_counts(rs.outlier_counts())


def prepare_pipeline(config: SessionConfig) -> PipelineState:
    """Everything up to (but excluding) the per-attribute rangesets."""
    overrides = {
        name: ov.kind for name, ov in config.overrides.items() if ov.kind
    }
    ds = load_dataset(config.dataset, kind_overrides=overrides)

    if config.attributes is None:
        selected = ds.continuous_names
    else:
        selected = list(config.attributes)
    known = {c.name for c in ds.columns}
    for name in selected:
        if name not in known:
            raise UnknownAttribute(f"selected attribute {name!r} is not in the dataset")

    embed_attrs = [n for n in selected if ds.column(n).kind == "continuous"]
    if not embed_attrs:
        embed_attrs = ds.continuous_names
    matrix, row_ids = ds.matrix(embed_attrs)
    standardized = standardize(matrix, embed_attrs)

    if config.embedding_source == "file":
        coords = ingest_embedding(config.embedding_path, expected_rows=ds.n_rows)
        coords = coords[row_ids]
        quality = projection_quality(
            standardized, coords, k=min(config.quality_k, len(coords) - 1)
        )
        embedding = EmbeddingResult(
            coords=coords,
            method=METHOD_EXTERNAL,
            stress=float("nan"),
            eigenvalues=np.empty(0),
            energy=float("nan"),
            quality=quality,
        )
    else:
        embedding = classical_mds(standardized, quality_k=config.quality_k)
        coords = embedding.coords

    tri = delaunay_triangulate(coords)
    curve = filtration_curve(tri)
    suggested = suggest_epsilon(coords)
    if config.epsilon == "auto":
        epsilon, source = suggested, "auto"
    else:
        epsilon, source = float(config.epsilon), "config"

    return PipelineState(
        config=config,
        dataset=ds,
        selected=selected,
        coords=coords,
        row_ids=row_ids,
        embedding=embedding,
        epsilon=epsilon,
        epsilon_source=source,
        suggested=suggested,
        curve=curve,
    )


def run_pipeline(config: SessionConfig) -> RangesetDocument:
    """Batch equivalent of an interactive session: embedding, threshold
    suggestion, one rangeset per selected attribute, topology curve,
    histograms and projection quality in one document."""
    state = prepare_pipeline(config)
    rangesets = {}
    histograms = {}
    for name in state.selected:
        rs, binned = state.compute(name)
        state.rangesets[name] = rs
        state.binned[name] = binned
        rangesets[name] = rangeset_fragment(rs)
        histograms[name] = histogram_fragment(binned)

    quality = state.embedding.quality if state.embedding is not None else None
    k = min(state.config.quality_k, len(state.coords) - 1)
    data = {
        "schema_version": SCHEMA_VERSION,
        "dataset": dataset_fragment(state.dataset, state.selected),
        "embedding": embedding_fragment(
            state.coords, state.row_ids, state.embedding,
            state.epsilon, state.epsilon_source, state.suggested,
        ),
        "rangesets": rangesets,
        "topology": topology_fragment(state.curve),
        "histograms": histograms,
        "quality": quality_fragment(quality, k),
    }
    return RangesetDocument(data)
