"""Leaf-space graphs of singular codimension-one Morse foliations."""

from .errors import (
    ArgumentError,
    DegenerateSaddle,
    FoliaError,
    InvalidGraph,
    MeshError,
    ModelInconsistency,
    ParseError,
    PreconditionError,
    RewriteBlocked,
    TooLarge,
)
from .graph import (
    FoliationGraph,
    Holonomy,
    LeafFamily,
    LeafTopology,
    Node,
    Port,
    SemiHolonomy,
    counts,
    index_multiset,
    validate,
)
from .canon import canonical_form, graphs_equal

__all__ = [
    "ArgumentError",
    "DegenerateSaddle",
    "FoliaError",
    "FoliationGraph",
    "Holonomy",
    "InvalidGraph",
    "LeafFamily",
    "LeafTopology",
    "MeshError",
    "ModelInconsistency",
    "Node",
    "ParseError",
    "Port",
    "PreconditionError",
    "RewriteBlocked",
    "SemiHolonomy",
    "TooLarge",
    "canonical_form",
    "counts",
    "graphs_equal",
    "index_multiset",
    "validate",
]
