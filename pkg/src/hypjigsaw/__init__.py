"""Exact computations with hyperbolic jigsaw groups.

Jigsaws are ideal polygons glued from marked triangles; their groups are
generated by half-turns about the marked points on the boundary.  The
package builds these groups exactly, develops the triangulation, decides
which rationals are cusps and tests arithmeticity.
"""

from .arith import (
    arithmeticity_check,
    commensurability_distinct,
    gamma2_generators,
    s13_block_decomposition,
    tangency_pattern,
)
from .cuspset import build_cover, classify_group, killer_interval, reduce_point, shift_killer
from .develop import cusp_strip, find_cycles, neighbor, special_endpoints, special_walk, trace_ray
from .exact import INF, ExtendedRational, GroupElement, normalize
from .jigsaw import JigsawSpec, assemble, canonical_key, census, group, validate_set, weierstrass
from .tiles import TileType, delta, tile_new

__all__ = [
    "INF", "ExtendedRational", "GroupElement", "normalize",
    "TileType", "delta", "tile_new",
    "JigsawSpec", "assemble", "canonical_key", "census", "group", "validate_set", "weierstrass",
    "cusp_strip", "find_cycles", "neighbor", "special_endpoints", "special_walk", "trace_ray",
    "build_cover", "classify_group", "killer_interval", "reduce_point", "shift_killer",
    "arithmeticity_check", "commensurability_distinct", "gamma2_generators",
    "s13_block_decomposition", "tangency_pattern",
]
