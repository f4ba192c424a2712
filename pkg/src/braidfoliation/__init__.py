"""Combinatorial engine for braid-foliated surfaces bounded by closed braids."""

from braidfoliation.tiling import (
    AxisVertex,
    BoundaryPoint,
    Parity,
    Sign,
    Tile,
    Tiling,
    TilingError,
    build_tiling,
    derive_adjacency,
    euler_and_classification,
    validate,
    vertex_star,
)

__all__ = [
    "AxisVertex",
    "BoundaryPoint",
    "Parity",
    "Sign",
    "Tile",
    "Tiling",
    "TilingError",
    "build_tiling",
    "derive_adjacency",
    "euler_and_classification",
    "validate",
    "vertex_star",
]
