"""Jigsaws: tiles glued along matching sides into an ideal polygon.

A :class:`JigsawSpec` is the combinatorial input (tiles plus dual-tree
gluings).  :func:`assemble` places every tile in the upper half-plane
(one ``Δ(1,1,1)`` tile, or else the first tile, in standard position),
reads off the boundary polygon and computes J-widths, signature and the
fundamental length ``L``.  :func:`group` exposes the generating half-turns.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DuplicateSideUse, InvalidJigsaw, MatchFailure, NotATree
from .exact import IDENTITY, INF, ExtendedRational, GroupElement, compose, inverse, product
from .tiles import (
    RHO_POWERS,
    STANDARD_VERTICES,
    TileType,
    fmt_label,
    side_after,
    std_involutions,
    tile_new,
)


@dataclass(frozen=True)
class JigsawSpec:
    """Tiles plus gluings ``(tile_a, side_a, tile_b, side_b)``.

    Tile indices are 0-based, sides 1-based and refer to the canonical
    rotation of each :class:`TileType`.
    """

    tiles: tuple
    gluings: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(self.tiles))
        object.__setattr__(self, "gluings", tuple(tuple(g) for g in self.gluings))

    @property
    def size(self) -> int:
        return len(self.tiles)

    def adjacency(self) -> dict:
        adj = {}
        for a, sa, b, sb in self.gluings:
            adj[(a, sa)] = (b, sb)
            adj[(b, sb)] = (a, sa)
        return adj

    def validate(self) -> None:
        n = len(self.tiles)
        if n == 0:
            raise InvalidJigsaw("a jigsaw needs at least one tile")
        used = set()
        for g in self.gluings:
            a, sa, b, sb = g
            for t, s in ((a, sa), (b, sb)):
                if not (0 <= t < n) or s not in (1, 2, 3):
                    raise InvalidJigsaw("gluing %s refers to a missing tile or side" % (list(g),))
                if (t, s) in used:
                    raise DuplicateSideUse("side %d of tile %d is glued twice" % (s, t))
                used.add((t, s))
            if a == b:
                raise NotATree("gluing %s joins a tile to itself" % (list(g),))
            ka, kb = self.tiles[a].label(sa), self.tiles[b].label(sb)
            if ka != kb:
                raise MatchFailure(a, sa, b, sb, "labels %s and %s" % (fmt_label(ka), fmt_label(kb)))
        if len(self.gluings) != n - 1:
            raise NotATree("%d tiles need %d gluings, got %d" % (n, n - 1, len(self.gluings)))
        seen = {0}
        stack = [0]
        nbrs = {}
        for a, _, b, _ in self.gluings:
            nbrs.setdefault(a, []).append(b)
            nbrs.setdefault(b, []).append(a)
        while stack:
            for u in nbrs.get(stack.pop(), ()):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != n:
            raise NotATree("gluing graph is disconnected")


@dataclass(frozen=True)
class BoundarySide:
    tile: int
    side: int
    label: Fraction
    start: ExtendedRational
    end: ExtendedRational


@dataclass(frozen=True)
class JigsawVertex:
    point: ExtendedRational
    jwidth: object  # int for integral jigsaws, else None
    weight: int
    corners: tuple  # ((tile, vertex index), ...)


@dataclass(eq=False)
class Jigsaw:
    spec: JigsawSpec
    base: int
    placements: tuple
    tile_vertices: tuple
    boundary: tuple
    vertices: tuple
    generators: tuple
    L: Fraction
    tile_set: tuple
    signature: tuple
    adjacency: dict = field(repr=False)
    generator_index: dict = field(repr=False)

    @property
    def tiles(self):
        return self.spec.tiles

    @property
    def size(self) -> int:
        return len(self.spec.tiles)

    @property
    def is_integral(self) -> bool:
        return all(t.integral_n is not None for t in self.spec.tiles)

    def glued_to(self, tile: int, side: int):
        return self.adjacency.get((tile, side))

    def formula_length(self):
        """``sum m_i (2 + n_i)`` for integral jigsaws."""
        if not self.is_integral:
            return None
        return sum(2 + t.integral_n for t in self.spec.tiles)

    def boundary_labels(self):
        return tuple(b.label for b in self.boundary)


@dataclass(eq=False)
class JigsawGroup:
    """The group generated by half-turns about the boundary marked points.

    ``generators[i]`` is the half-turn for boundary side ``s_i``, in the
    cyclic order starting with the side leaving ∞.
    """

    jigsaw: Jigsaw
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def generators(self):
        return self.jigsaw.generators

    @property
    def placements(self):
        return self.jigsaw.placements

    @property
    def L(self) -> Fraction:
        return self.jigsaw.L

    @property
    def size(self):
        return self.jigsaw.size

    def translation_word(self, times: int = 1):
        """Word for ``T^(L * times)``; ``T^L = ι_{N+1} ... ι_0``."""
        n = len(self.generators)
        one = tuple(range(n - 1, -1, -1)) if times > 0 else tuple(range(n))
        return one * abs(times)


def _base_tile(tiles: Sequence[TileType]) -> int:
    for i, t in enumerate(tiles):
        if t.integral_n == 1:
            return i
    return 0


def _cross_interior(placement, tile: TileType, side: int, other_side: int):
    """Placement of the tile glued to ``side`` of a placed tile, entered via ``other_side``."""
    return compose(compose(placement, std_involutions(tile)[side - 1]),
                   RHO_POWERS[(side - other_side) % 3])


def _boundary_order_key(side: BoundarySide):
    return (0, Fraction(0)) if side.start.is_infinite else (1, side.start.to_fraction())


def assemble(spec: JigsawSpec) -> Jigsaw:
    spec.validate()
    tiles = spec.tiles
    adj = spec.adjacency()
    base = _base_tile(tiles)
    placements = [None] * len(tiles)
    placements[base] = IDENTITY
    queue = deque([base])
    while queue:
        t = queue.popleft()
        for s in (1, 2, 3):
            nb = adj.get((t, s))
            if nb is None or placements[nb[0]] is not None:
                continue
            u, s2 = nb
            placements[u] = _cross_interior(placements[t], tiles[t], s, s2)
            queue.append(u)
    placements = tuple(placements)
    tile_vertices = tuple(tuple(p(v) for v in STANDARD_VERTICES) for p in placements)

    sides = []
    for t, tile in enumerate(tiles):
        for s in (1, 2, 3):
            if (t, s) not in adj:
                vs = tile_vertices[t]
                sides.append(BoundarySide(t, s, tile.label(s), vs[s - 1], vs[s % 3]))
    sides.sort(key=_boundary_order_key)
    if not sides[0].start.is_infinite:
        raise InvalidJigsaw("∞ is not a boundary vertex")  # cannot happen for a valid tree
    for a, b in zip(sides, sides[1:] + sides[:1]):
        if a.end != b.start:
            raise InvalidJigsaw("boundary sides do not form a polygon")

    corners = {}
    for t, vs in enumerate(tile_vertices):
        for a, v in enumerate(vs, start=1):
            corners.setdefault(v, []).append((t, a))
    integral = all(t.integral_n is not None for t in tiles)
    vertices = []
    for b in sides:
        cs = tuple(corners[b.start])
        jw = sum(tiles[t].vertex_width(a) for t, a in cs) if integral else None
        vertices.append(JigsawVertex(b.start, jw, len(cs), cs))

    generators = []
    for b in sides:
        p = placements[b.tile]
        generators.append(compose(compose(p, std_involutions(tiles[b.tile])[b.side - 1]), inverse(p)))
    loop = product(reversed(generators))
    if loop.m21 != 0 or loop.m11 != loop.m22:
        raise InvalidJigsaw("boundary half-turns do not compose to a translation (unbalanced tile?)")
    L = Fraction(loop.m12, loop.m11)

    tile_set = tuple(sorted(set(tiles), key=TileType.sort_key))
    signature = tuple(sum(1 for t in tiles if t == u) for u in tile_set)
    return Jigsaw(
        spec=spec,
        base=base,
        placements=placements,
        tile_vertices=tile_vertices,
        boundary=tuple(sides),
        vertices=tuple(vertices),
        generators=tuple(generators),
        L=L,
        tile_set=tile_set,
        signature=signature,
        adjacency=adj,
        generator_index={(b.tile, b.side): i for i, b in enumerate(sides)},
    )


def group(j: Jigsaw) -> JigsawGroup:
    return JigsawGroup(j)


def weierstrass(k1, k2, k3) -> JigsawGroup:
    """Group generated by the three half-turns of one tile in standard position."""
    return group(assemble(JigsawSpec((tile_new(k1, k2, k3),), ())))


def validate_set(tiles, weierstrass: bool = False) -> bool:
    """Whether every tile has a side matching a side of some other tile.

    A single tile passes when it has two equal labels, or when the caller
    asks for Weierstrass (single-tile) mode.
    """
    tiles = list(dict.fromkeys(tiles))
    if not tiles:
        return False
    if len(tiles) == 1:
        return weierstrass or len(set(tiles[0].labels)) < 3
    for t in tiles:
        others = {k for u in tiles if u != t for k in u.labels}
        if not others.intersection(t.labels):
            return False
    return True


def canonical_key(j) -> str:
    """String invariant under relabelling tiles and rotating the boundary.

    Two jigsaws get the same key exactly when an orientation-preserving
    isomorphism carries one onto the other; mirror images differ.
    """
    spec = j.spec if isinstance(j, Jigsaw) else j
    adj = spec.adjacency()
    tag_of = {}
    for t in set(spec.tiles):
        tag_of[t] = (t.key(), t.is_symmetric)
    info = [tag_of[t] for t in spec.tiles]
    memo = {}  # (tile, entry side) -> encoding of the subtree beyond it

    def child(t, s):
        nb = adj.get((t, s))
        return "-" if nb is None else enc(nb[0], nb[1])

    def enc(t, entry):
        got = memo.get((t, entry))
        if got is None:
            tag, sym = info[t]
            if not sym:
                tag = "%s@%d" % (tag, entry)
            got = "%s[%s,%s]" % (tag, child(t, side_after(entry, 1)), child(t, side_after(entry, 2)))
            memo[(t, entry)] = got
        return got

    best = None
    for t, (tag, sym) in enumerate(info):
        for a in ((1, 2, 3) if sym else (1,)):
            key = "%s(%s)" % (tag, ",".join(child(t, side_after(a, i)) for i in range(3)))
            if best is None or key < best:
                best = key
    return best


def _grow(spec: JigsawSpec, types):
    adj = spec.adjacency()
    n = spec.size
    for t, tile in enumerate(spec.tiles):
        for s in (1, 2, 3):
            if (t, s) in adj:
                continue
            k = tile.label(s)
            for u in types:
                for s2 in ((1,) if u.is_symmetric else (1, 2, 3)):
                    if u.label(s2) == k:
                        yield JigsawSpec(spec.tiles + (u,), spec.gluings + ((t, s, n, s2),))


def census_specs(tiles, max_size: int):
    """Canonical specs of all jigsaws with ``2 <= size <= max_size`` tiles.

    Every tile type of ``tiles`` must occur.  Jigsaws are grown one leaf tile
    at a time from canonical representatives and deduplicated by
    :func:`canonical_key`.  Returns ``[(key, spec), ...]`` ordered by size
    then key.
    """
    types = sorted(set(tiles), key=TileType.sort_key)
    level = {}
    for u in types:
        s = JigsawSpec((u,), ())
        level[canonical_key(s)] = s
    out = []
    for _size in range(2, max_size + 1):
        nxt = {}
        for key in sorted(level):
            for s in _grow(level[key], types):
                k = canonical_key(s)
                if k not in nxt:
                    nxt[k] = s
        level = nxt
        for k in sorted(level):
            if set(level[k].tiles) == set(types):
                out.append((k, level[k]))
    return out


def census(tiles, max_size: int):
    """Assembled canonical jigsaws, see :func:`census_specs`."""
    return [assemble(s) for _, s in census_specs(tiles, max_size)]
