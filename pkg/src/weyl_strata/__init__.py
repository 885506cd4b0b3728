"""Weyl group combinatorics for stable pieces of wonderful compactifications.

Everything is an index-level computation on a finite Weyl group built from a
Cartan matrix: admissible triples and their pieces of W x W, the closure order
on pieces [J, w, v]_{K, delta}, the parabolic-closure descriptions, and the
signed sums behind the Steinberg restriction identity.
"""

from .cartan import CartanType
from .compactification import (
    ClosurePoset,
    GPieceIndex,
    PieceIndex,
    boundary_profile,
    closure_leq,
    enumerate_pieces,
    piece_dimension,
    semistable_g_pieces,
)
from .errors import ConfigError, ConsistencyError, WeylStrataError
from .weyl import DiagramAut, WeylElement, WeylGroup, build_group, diagram_automorphisms

__all__ = [
    "CartanType",
    "ClosurePoset",
    "ConfigError",
    "ConsistencyError",
    "DiagramAut",
    "GPieceIndex",
    "PieceIndex",
    "WeylElement",
    "WeylGroup",
    "WeylStrataError",
    "boundary_profile",
    "build_group",
    "closure_leq",
    "diagram_automorphisms",
    "enumerate_pieces",
    "piece_dimension",
    "semistable_g_pieces",
]
