"""Freeness of multiplicities on braid arrangements."""

from .ann import AnnDecomposition, ann_decompose, ann_decompose_oracle, verify_decomposition
from .arrangement import (
    MultiBraid,
    deviation,
    deviation_closed_form,
    is_balanced,
    mixed_products,
    new_multiplicity,
    odd_triangle_count,
    restrict,
)
from .freeness import FreenessVerdict, Status, criterion2, criterion3, decide, decide_balanced
from .signed_graph import SignedGraph, is_eliminable

__all__ = [
    "AnnDecomposition",
    "FreenessVerdict",
    "MultiBraid",
    "SignedGraph",
    "Status",
    "ann_decompose",
    "ann_decompose_oracle",
    "criterion2",
    "criterion3",
    "decide",
    "decide_balanced",
    "deviation",
    "deviation_closed_form",
    "is_balanced",
    "is_eliminable",
    "mixed_products",
    "new_multiplicity",
    "odd_triangle_count",
    "restrict",
    "verify_decomposition",
]
