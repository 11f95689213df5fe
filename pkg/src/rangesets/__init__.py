"""Rangesets: per-attribute-bin non-convex contours for 2D embeddings.

The package augments scatterplots of embedded high-dimensional data with
one translucent alpha-hull contour per attribute bin, computed by
filtering a Delaunay triangulation at an edge-length threshold, plus
topology summaries, outlier highlighting and a default-threshold
heuristic.
"""

from .binning import AttributeSpec, BinnedAttribute, bin_assign, categorize
from .config import SessionConfig, load_config, save_config
from .dataset import Dataset, load_dataset
from .document import RangesetDocument, canonical_json, run_pipeline
from .embedding import (
    ClassicalMDS,
    EmbeddingResult,
    classical_mds,
    ingest_embedding,
    projection_quality,
    standardize,
)
from .errors import (
    AllCollinear,
    ComputationSuperseded,
    ConstantColumn,
    EigenFailure,
    EmptyDataset,
    InconsistentInput,
    KTooLarge,
    NegativeEpsilon,
    NonNumeric,
    ParseError,
    RangesetsError,
    RowCountMismatch,
    SinglePoint,
    TooFewPoints,
    UnknownAttribute,
)
from .filtration import (
    ContourGeometry,
    FilteredComplex,
    FiltrationCurve,
    extract_boundary,
    filter_complex,
    filtration_curve,
)
from .geometry import Triangulation, convex_hull, delaunay_triangulate, edge_lengths
from .mst import SpanningTree, default_epsilon, mst
from .pipeline import BinResult, Rangeset, Rangesets, compute_rangeset, suggest_epsilon
from .svg import export_svg

__version__ = "0.1.0"

__all__ = [
    "AllCollinear",
    "AttributeSpec",
    "BinnedAttribute",
    "BinResult",
    "ClassicalMDS",
    "ComputationSuperseded",
    "ConstantColumn",
    "ContourGeometry",
    "Dataset",
    "EigenFailure",
    "EmbeddingResult",
    "EmptyDataset",
    "FilteredComplex",
    "FiltrationCurve",
    "InconsistentInput",
    "KTooLarge",
    "NegativeEpsilon",
    "NonNumeric",
    "ParseError",
    "Rangeset",
    "RangesetDocument",
    "Rangesets",
    "RangesetsError",
    "RowCountMismatch",
    "SessionConfig",
    "SinglePoint",
    "SpanningTree",
    "TooFewPoints",
    "Triangulation",
    "UnknownAttribute",
    "bin_assign",
    "canonical_json",
    "categorize",
    "classical_mds",
    "compute_rangeset",
    "convex_hull",
    "default_epsilon",
    "delaunay_triangulate",
    "edge_lengths",
    "export_svg",
    "extract_boundary",
    "filter_complex",
    "filtration_curve",
    "ingest_embedding",
    "load_config",
    "load_dataset",
    "mst",
    "projection_quality",
    "run_pipeline",
    "save_config",
    "standardize",
    "suggest_epsilon",
]
