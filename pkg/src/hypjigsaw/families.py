"""Named jigsaws and families used in examples, tests and the CLI."""

from __future__ import annotations

from .jigsaw import JigsawSpec
from .tiles import delta

D1, D2, D3 = delta(1), delta(2), delta(3)


def two_delta1() -> JigsawSpec:
    return JigsawSpec((D1, D1), ((0, 2, 1, 1),))


def j_a() -> JigsawSpec:
    """A ``Δ(1,1,1)`` core with a ``Δ(1,1/3,3)`` on each side (via label 1)."""
    return JigsawSpec((D1, D3, D3, D3), ((0, 1, 1, 1), (0, 2, 2, 1), (0, 3, 3, 1)))


def two_j_a() -> JigsawSpec:
    """Two copies of :func:`j_a` glued along a label-3 side."""
    tiles = (D1, D3, D3, D3, D1, D3, D3, D3)
    gl = ((0, 1, 1, 1), (0, 2, 2, 1), (0, 3, 3, 1),
          (4, 1, 5, 1), (4, 2, 6, 1), (4, 3, 7, 1),
          (1, 3, 5, 3))
    return JigsawSpec(tiles, gl)


def _chain(first: int, n: int):
    """Gluings for a path of ``n`` tiles ``first .. first+n-1`` joined side 2 to side 1."""
    return tuple((first + i, 2, first + i + 1, 1) for i in range(n - 1))


def s12_chain(r: int) -> JigsawSpec:
    """``r`` copies of ``Δ(1,1,1)`` in a path, then one ``Δ(1,1/2,2)``: signature ``(r, 1)``."""
    tiles = (D1,) * r + (D2,)
    return JigsawSpec(tiles, _chain(0, r) + ((r - 1, 2, r, 1),))


def s13_chain(r: int) -> JigsawSpec:
    tiles = (D1,) * r + (D3,)
    return JigsawSpec(tiles, _chain(0, r) + ((r - 1, 2, r, 1),))


def j_prime() -> JigsawSpec:
    """Three ``Δ(1,1/3,3)`` tiles carrying a ``3, 1, 1/3, 1`` closed geodesic.

    Tiles 0 and 2 share their label-1 sides and carry the geodesic; tile 1
    hangs off the label-3 side of tile 0 and its label-1 side is free.
    """
    return JigsawSpec((D3, D3, D3), ((0, 3, 1, 3), (0, 1, 2, 1)))


J_PRIME_FREE_SIDE = (1, 1)


def j_prime_union(n: int) -> JigsawSpec:
    """:func:`j_prime` with a path of ``n`` ``Δ(1,1,1)`` tiles on its free label-1 side."""
    base = j_prime()
    t, s = J_PRIME_FREE_SIDE
    tiles = base.tiles + (D1,) * n
    gl = base.gluings + ((t, s, 3, 1),) + _chain(3, n) if n else base.gluings
    return JigsawSpec(tiles, gl)
