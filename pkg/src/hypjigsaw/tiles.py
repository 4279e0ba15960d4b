"""Marked ideal triangles ``Δ(k1, k2, k3)`` and their standard-position data.

Standard position puts the vertices at ``(v1, v2, v3) = (∞, -1, 0)``; side
``i`` joins ``v_i`` to ``v_{i+1}`` and carries the label ``k_i``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotBalanced
from .exact import INF, ExtendedRational, GroupElement

STANDARD_VERTICES = (INF, ExtendedRational(-1, 1), ExtendedRational(0, 1))

# order-three rotation of the standard ideal triangle: u1 -> u2 -> u3 -> u1
RHO = GroupElement(1, 1, -1, 0, 1)
RHO_POWERS = (GroupElement(1, 0, 0, 1, 1), RHO, RHO @ RHO)


def _key(k: Fraction):
    return (k.numerator, k.denominator)


def fmt_label(k: Fraction) -> str:
    return str(k.numerator) if k.denominator == 1 else "%d/%d" % (k.numerator, k.denominator)


def side_after(i: int, steps: int = 1) -> int:
    """Cyclic successor of a 1-based side (or vertex) index."""
    return (i - 1 + steps) % 3 + 1


@dataclass(frozen=True)
class TileType:
    """A rational balanced marked triangle, stored in canonical rotation."""

    k1: Fraction
    k2: Fraction
    k3: Fraction

    def __post_init__(self):
        ks = self.labels
        if any(k <= 0 for k in ks):
            raise ValueError("tile parameters must be positive")
        if ks[0] * ks[1] * ks[2] != 1:
            raise NotBalanced("k1*k2*k3 = %s != 1" % (ks[0] * ks[1] * ks[2]))
        if ks != _least_rotation(ks)[0]:
            raise ValueError("use tile_new() to build a canonically rotated tile")

    @property
    def labels(self):
        return (self.k1, self.k2, self.k3)

    def label(self, side: int) -> Fraction:
        return self.labels[side - 1]

    @property
    def is_symmetric(self) -> bool:
        return self.k1 == self.k2 == self.k3

    @property
    def integral_n(self):
        """``n`` when this tile is ``Δ(1, 1/n, n)``, else ``None``."""
        if self.k1 == 1 and self.k3.denominator == 1 and self.k2 == 1 / self.k3:
            return int(self.k3)
        return None

    def side_type(self, side: int):
        k = self.label(side)
        n = max(k, 1 / k)
        return int(n) if n.denominator == 1 else None

    def vertex_width(self, vertex: int):
        """J-width contributed by the given vertex (integral tiles only).

        The vertex between the two type-n sides has width n; the others 1.
        """
        n = self.integral_n
        if n is None:
            return None
        return n if vertex == 3 else 1

    def key(self) -> str:
        return ",".join(fmt_label(k) for k in self.labels)

    def sort_key(self):
        n = self.integral_n
        return (0, n, ()) if n is not None else (1, 0, tuple(_key(k) for k in self.labels))

    def __str__(self):
        n = self.integral_n
        return "Δ(%s)" % ("1,1/%d,%d" % (n, n) if n not in (None, 1) else self.key())


def _least_rotation(ks):
    rots = [(ks[r:] + ks[:r], r) for r in range(3)]
    return min(rots, key=lambda t: [_key(k) for k in t[0]])


def canonical_rotation(k1, k2, k3):
    """Canonical tile plus the offset ``r`` with canonical = input rotated by ``r``.

    Side ``i`` of the input corresponds to side ``side_after(i, -r)`` of the
    canonical tile.
    """
    ks = tuple(Fraction(k) for k in (k1, k2, k3))
    if any(k <= 0 for k in ks):
        raise ValueError("tile parameters must be positive")
    if ks[0] * ks[1] * ks[2] != 1:
        raise NotBalanced("k1*k2*k3 = %s != 1" % (ks[0] * ks[1] * ks[2]))
    best, r = _least_rotation(ks)
    return TileType(*best), r


def tile_new(k1, k2, k3) -> TileType:
    return canonical_rotation(k1, k2, k3)[0]


def delta(n: int) -> TileType:
    """The integral tile ``Δ(1, 1/n, n)``."""
    return tile_new(1, Fraction(1, n), n)


def std_marked_points(t: TileType):
    """Marked points in standard position as ``(real part, height^2)`` pairs."""
    k1, k2, k3 = t.labels
    return (
        (Fraction(-1), 1 / k1),
        (-1 / (1 + k2), k2 / (1 + k2) ** 2),
        (Fraction(0), k3),
    )


@functools.lru_cache(maxsize=None)
def std_involutions(t: TileType):
    """Half-turns about the three standard marked points."""
    k1, k2, k3 = t.labels
    return (
        GroupElement.from_rational(k1, 1 + k1, -k1, -k1),
        GroupElement.from_rational(1, 1, -(k2 + 1), -1),
        GroupElement.from_rational(0, k3, -1, 0),
    )


def sides_match(t: TileType, i: int, u: TileType, j: int) -> bool:
    return t.label(i) == u.label(j)


def fixes_upper_point(g: GroupElement, x: Fraction, h2: Fraction) -> bool:
    """Whether ``g`` fixes ``x + sqrt(h2) i`` (exact, no square roots)."""
    a, b, c, d = g.m11, g.m12, g.m21, g.m22
    return c * (x * x - h2) + (d - a) * x - b == 0 and 2 * c * x + d - a == 0
