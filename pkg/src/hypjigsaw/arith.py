"""Arithmeticity tests and the tangency-pattern commensurability invariant."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .develop import cusp_strip
from .errors import FamilyOutOfScope
from .exact import GroupElement, compose, trace_squared
from .families import j_prime
from .jigsaw import Jigsaw, JigsawGroup, JigsawSpec, canonical_key
from .tiles import delta, fmt_label

D1, D2, D3 = delta(1), delta(2), delta(3)


def gamma2_generators(g: JigsawGroup):
    """``ι_0 ι_i`` for ``i = 1 .. N+1``; they generate the even-length subgroup."""
    gens = g.generators
    return [compose(gens[0], gens[i]) for i in range(1, len(gens))]


@dataclass(frozen=True)
class Arithmetic:
    traces: tuple  # ((description, trace^2), ...)


@dataclass(frozen=True)
class NonArithmetic:
    witness: GroupElement
    description: str
    trace2: Fraction


def _period_exterior_sides(g: JigsawGroup):
    strip = cusp_strip(g)
    end = strip.start + strip.L
    return [s for s in strip.exterior_sides() if s.foot != end]


def arithmeticity_check(g: JigsawGroup):
    """Integrality of squared traces.

    Checks ``ι_0 ι_i`` and every product ``h_j h_k`` of half-turns about
    exterior vertical sides in one period.  One non-integral value proves
    non-arithmeticity; all integral is taken as arithmetic.
    """
    seen = []
    for i, e in enumerate(gamma2_generators(g), start=1):
        t2 = trace_squared(e)
        desc = "i0*i%d" % i
        if t2.denominator != 1:
            return NonArithmetic(e, desc, t2)
        seen.append((desc, t2))
    sides = _period_exterior_sides(g)
    for a, b in combinations(sides, 2):
        e = compose(a.rotation, b.rotation)
        t2 = trace_squared(e)
        desc = "h(%s)*h(%s)" % (a.foot, b.foot)
        if t2.denominator != 1:
            return NonArithmetic(e, desc, t2)
        seen.append((desc, t2))
    return Arithmetic(tuple(seen))


@dataclass(frozen=True)
class JABlocks:
    count: int


@dataclass(frozen=True)
class NotDecomposable:
    reason: str


def s13_block_decomposition(j: Jigsaw):
    """Split an S(1,3) jigsaw into copies of the four-tile block.

    A block is one ``Δ(1,1,1)`` core with a ``Δ(1,1/3,3)`` glued by its
    label-1 side on each of the core's sides.
    """
    tiles = j.tiles
    if not set(tiles) <= {D1, D3}:
        return NotDecomposable("not an S(1,3) jigsaw")
    cores = [t for t, x in enumerate(tiles) if x == D1]
    if not cores:
        return NotDecomposable("no Δ(1,1,1) core")
    for v in j.vertices:
        if v.jwidth % 3:
            return NotDecomposable("vertex %s has J-width %d, not a multiple of 3" % (v.point, v.jwidth))
    for b in j.boundary:
        if b.label == 1:
            return NotDecomposable("boundary side of tile %d has label 1" % b.tile)
    for t in cores:
        for s in (1, 2, 3):
            nb = j.adjacency.get((t, s))
            if nb is None or tiles[nb[0]] != D3:
                return NotDecomposable("side %d of core tile %d does not meet Δ(1,1/3,3)" % (s, t))
    for t, x in enumerate(tiles):
        if x == D3:
            nb = j.adjacency.get((t, 1))
            if nb is None or tiles[nb[0]] != D1:
                return NotDecomposable("Δ(1,1/3,3) tile %d is not attached to a core" % t)
    return JABlocks(len(cores))


@dataclass(frozen=True)
class TangencyPattern:
    """Cyclic ``(gap to next side, label)`` list over one period, least rotation."""

    entries: tuple
    L: Fraction

    @property
    def gaps(self):
        return tuple(e[0] for e in self.entries)

    @property
    def labels(self):
        return tuple(e[1] for e in self.entries)

    def to_json(self):
        return [[str(gp), fmt_label(k)] for gp, k in self.entries]


def _least_rotation(seq):
    if not seq:
        return ()
    key = lambda s: [(gp, k.numerator, k.denominator) for gp, k in s]
    return min((seq[i:] + seq[:i] for i in range(len(seq))), key=key)


def tangency_pattern(g: JigsawGroup) -> TangencyPattern:
    strip = cusp_strip(g)
    end = strip.start + strip.L
    sides = sorted((s for s in strip.sides if s.label != 1 and s.foot != end), key=lambda s: s.foot)
    entries = []
    for i, s in enumerate(sides):
        nxt = sides[(i + 1) % len(sides)].foot
        if i + 1 == len(sides):
            nxt += strip.L
        gap = nxt - s.foot
        entries.append((int(gap) if gap.denominator == 1 else gap, s.label))
    return TangencyPattern(tuple(_least_rotation(entries)), strip.L)


def _connected(j: Jigsaw, members) -> bool:
    members = set(members)
    if not members:
        return False
    start = next(iter(members))
    seen, stack = {start}, [start]
    while stack:
        t = stack.pop()
        for s in (1, 2, 3):
            nb = j.adjacency.get((t, s))
            if nb and nb[0] in members and nb[0] not in seen:
                seen.add(nb[0])
                stack.append(nb[0])
    return seen == members


def _is_j_prime(j: Jigsaw, members) -> bool:
    """Whether the given three tiles form a connected copy of J'."""
    if not _connected(j, members):
        return False
    index = {t: i for i, t in enumerate(members)}
    gl = tuple((index[a], sa, index[b], sb) for a, sa, b, sb in j.spec.gluings
               if a in index and b in index)
    sub = JigsawSpec(tuple(j.tiles[t] for t in members), gl)
    return canonical_key(sub) == canonical_key(j_prime())


def family(j: Jigsaw):
    """Name of the family a jigsaw belongs to, among those where the invariant applies."""
    kinds = set(j.tiles)
    n1 = sum(1 for t in j.tiles if t == D1)
    if kinds == {D1, D2} and j.size - n1 == 1:
        return "S(1,2)(%d,1)" % n1
    if kinds == {D1, D3}:
        if j.size - n1 == 1:
            return "S(1,3)(%d,1)" % n1
        d3 = [t for t, x in enumerate(j.tiles) if x == D3]
        d1 = [t for t, x in enumerate(j.tiles) if x == D1]
        if len(d3) == 3 and _connected(j, d1) and _is_j_prime(j, d3):
            return "J'+J_%d" % n1
    return None


@dataclass(frozen=True)
class Distinct:
    reason: str


@dataclass(frozen=True)
class NotDistinguished:
    reason: str


def commensurability_distinct(a, b):
    """Compare two classification reports by their tangency patterns.

    Only groups from the families above, both non-arithmetic, are accepted.
    Never claims commensurability: equal patterns give ``NotDistinguished``.
    """
    for r in (a, b):
        if r.family is None:
            raise FamilyOutOfScope("jigsaw is outside the families the invariant covers")
        if r.verdict == "arithmetic":
            raise FamilyOutOfScope("arithmetic groups are not compared")
    if a.tangency != b.tangency:
        return Distinct("tangency patterns differ: %s vs %s" % (a.tangency.to_json(), b.tangency.to_json()))
    return NotDistinguished("equal tangency patterns")
