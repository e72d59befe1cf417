"""Grid embeddings, the T1/T2 gadgets and the reduction pipeline to ``F``."""

from .embedding import EmbeddingError, GridEmbedding, embed_tiny_planar
from .gadgets import T1, T2, GadgetKind, gadget_graph
from .pipeline import (
    ReductionBundle,
    ReductionError,
    VerificationReport,
    build_reduction,
    construct_dominating_from_vc,
    extract_vc_from_ds,
    normalize_dominating_set,
    random_orientation,
    verify_reduction,
)

__all__ = [
    "EmbeddingError",
    "GadgetKind",
    "GridEmbedding",
    "ReductionBundle",
    "ReductionError",
    "T1",
    "T2",
    "VerificationReport",
    "build_reduction",
    "construct_dominating_from_vc",
    "embed_tiny_planar",
    "extract_vc_from_ds",
    "gadget_graph",
    "normalize_dominating_set",
    "random_orientation",
    "verify_reduction",
]
