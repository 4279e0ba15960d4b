"""Developing the jigsaw triangulation into the upper half-plane.

Every developed triangle is ``eval(word) * B_t`` applied to the standard
triangle, where ``B_t`` is the base placement of jigsaw tile ``t``.  Crossing
an interior side moves to the glued tile (same word); crossing an exterior
side stays on the same tile and appends the side's generator to the word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import NoStripLift
from .exact import (
    INF,
    ExtendedRational,
    GroupElement,
    compose,
    evaluate_word,
    inverse,
    rational_fixed_points,
    translation,
    word_concat,
    word_inverse,
)
from .jigsaw import JigsawGroup, _cross_interior
from .tiles import STANDARD_VERTICES, delta, side_after, std_involutions

# W-cutting sequence period of the closed geodesics producing specials
SPECIAL_PERIOD = (Fraction(3), Fraction(1), Fraction(1, 3), Fraction(1))


@dataclass(frozen=True)
class DevelopedTile:
    tile: int
    placement: GroupElement
    word: tuple = ()

    @property
    def vertices(self):
        return tuple(self.placement(v) for v in STANDARD_VERTICES)

    def vertex_index(self, x: ExtendedRational):
        for i, v in enumerate(self.vertices, start=1):
            if v == x:
                return i
        return None


def base_tile(g: JigsawGroup, t: int) -> DevelopedTile:
    return DevelopedTile(t, g.placements[t], ())


def neighbor(g: JigsawGroup, dt: DevelopedTile, side: int):
    """Developed tile across ``side`` of ``dt``, and the side it is entered by."""
    j = g.jigsaw
    tile = j.tiles[dt.tile]
    nb = j.adjacency.get((dt.tile, side))
    if nb is not None:
        u, s2 = nb
        return DevelopedTile(u, _cross_interior(dt.placement, tile, side, s2), dt.word), s2
    i = j.generator_index[(dt.tile, side)]
    p = compose(dt.placement, std_involutions(tile)[side - 1])
    return DevelopedTile(dt.tile, p, word_concat(dt.word, (i,))), side


def side_rotation(g: JigsawGroup, dt: DevelopedTile, side: int) -> GroupElement:
    """Half-turn about the marked point on a side of a developed tile."""
    p = dt.placement
    return compose(compose(p, std_involutions(g.jigsaw.tiles[dt.tile])[side - 1]), inverse(p))


def translate(g: JigsawGroup, dt: DevelopedTile, k: int) -> DevelopedTile:
    """The developed tile moved by ``T^(kL)``."""
    if k == 0:
        return dt
    p = compose(translation(g.L * k), dt.placement)
    return DevelopedTile(dt.tile, p, word_concat(g.translation_word(k), dt.word))


# ---------------------------------------------------------------- cusp strip


@dataclass(frozen=True)
class StripTriangle:
    dev: DevelopedTile
    apex: int  # vertex index sitting at ∞
    left: Fraction
    right: Fraction

    @property
    def width(self):
        return self.right - self.left

    @property
    def left_side(self) -> int:
        return self.apex

    @property
    def right_side(self) -> int:
        return side_after(self.apex, 2)

    @property
    def bottom_side(self) -> int:
        return side_after(self.apex, 1)


@dataclass(frozen=True)
class VerticalSide:
    foot: Fraction
    label: Fraction
    exterior: bool
    generator: Optional[int]
    witness: GroupElement  # witness(∞) = foot
    witness_word: tuple
    rotation: GroupElement  # half-turn about the marked point of the side
    tile: int
    side: int


def _strip_triangle(dt: DevelopedTile, apex: int) -> StripTriangle:
    vs = dt.vertices
    return StripTriangle(dt, apex, vs[apex % 3].to_fraction(), vs[(apex + 1) % 3].to_fraction())


def _period(g: JigsawGroup):
    """Strip triangles of one period, walking right from the base tile."""
    cache = g._cache
    if "period" in cache:
        return cache["period"]
    j = g.jigsaw
    cur = _strip_triangle(base_tile(g, j.base), 1)
    tris = [cur]
    for _ in range(3 * j.size - 1):
        nxt, entry = neighbor(g, cur.dev, cur.right_side)
        cur = _strip_triangle(nxt, entry)
        tris.append(cur)
    nxt, entry = neighbor(g, cur.dev, cur.right_side)
    back = translate(g, tris[0].dev, 1)
    if nxt.tile != back.tile or nxt.placement != back.placement or entry != tris[0].apex:
        raise AssertionError("cusp strip does not close up after one period")
    corner = {}
    for s in tris:
        corner.setdefault((s.dev.tile, s.apex), s)
    cache["period"] = (tuple(tris), corner)
    return cache["period"]


def vertex_witness(g: JigsawGroup, dt: DevelopedTile, vertex: int):
    """``(h, word)`` with ``h(∞)`` the given vertex of ``dt`` and ``h = eval(word)``."""
    _, corner = _period(g)
    s = corner.get((dt.tile, vertex))
    if s is None:
        raise NoStripLift("corner (%d, %d) never reaches ∞" % (dt.tile, vertex))
    h = compose(dt.placement, inverse(s.dev.placement))
    return h, word_concat(dt.word, word_inverse(s.dev.word))


def default_start(g: JigsawGroup) -> Fraction:
    """Left end ``m_0 - L`` of the default period window."""
    return g.jigsaw.boundary[0].end.to_fraction() - g.L


@dataclass(eq=False)
class CuspStrip:
    L: Fraction
    start: Fraction
    triangles: tuple  # strip triangles meeting [start, start + L], left to right
    sides: tuple  # vertical sides with feet in [start, start + L], feet decreasing

    @property
    def feet(self):
        return [s.foot for s in self.sides]

    def exterior_sides(self):
        return [s for s in self.sides if s.exterior]


def _vertical_side(g: JigsawGroup, s: StripTriangle) -> VerticalSide:
    """The left vertical side of a strip triangle."""
    j = g.jigsaw
    key = (s.dev.tile, s.left_side)
    h, w = vertex_witness(g, s.dev, side_after(s.apex, 1))
    return VerticalSide(
        foot=s.left,
        label=j.tiles[s.dev.tile].label(s.left_side),
        exterior=key not in j.adjacency,
        generator=j.generator_index.get(key),
        witness=h,
        witness_word=w,
        rotation=side_rotation(g, s.dev, s.left_side),
        tile=s.dev.tile,
        side=s.left_side,
    )


def cusp_strip(g: JigsawGroup, start=None) -> CuspStrip:
    """The triangles at ∞ over the window ``[start, start + L]``."""
    tris, _ = _period(g)
    L = g.L
    start = default_start(g) if start is None else Fraction(start)
    end = start + L
    p0 = tris[0].left
    kmin = int((start - p0) // L) - 1
    out = []
    for k in range(kmin, kmin + 4):
        for s in tris:
            if s.left + k * L < end and s.right + k * L > start:
                out.append(_strip_triangle(translate(g, s.dev, k), s.apex))
    out.sort(key=lambda s: s.left)
    sides = [_vertical_side(g, s) for s in out if start <= s.left <= end]
    if out and out[-1].right == end:
        nxt, entry = neighbor(g, out[-1].dev, out[-1].right_side)
        sides.append(_vertical_side(g, _strip_triangle(nxt, entry)))
    sides.sort(key=lambda v: v.foot, reverse=True)
    return CuspStrip(L, start, tuple(out), tuple(sides))


def strip_rotation(m, n) -> GroupElement:
    """``(1/sqrt(n)) [[m, -(m^2+n)], [1, -m]]``: half-turn about ``m + sqrt(n) i``."""
    m, n = Fraction(m), Fraction(n)
    return GroupElement.from_rational(m, -(m * m + n), 1, -m)


# ---------------------------------------------------------------- ray tracing


def in_arc(a: ExtendedRational, b: ExtendedRational, x: ExtendedRational) -> bool:
    """Whether ``x`` lies strictly inside the boundary arc from ``a`` to ``b``.

    The arc runs in the increasing direction and wraps through ∞.
    """
    if x == a or x == b:
        return False
    if a.is_infinite:
        return x < b
    if b.is_infinite:
        return a < x
    if x.is_infinite:
        return b < a
    if a < b:
        return a < x < b
    return x > a or x < b


def exit_side(dt: DevelopedTile, x: ExtendedRational, entry: Optional[int] = None) -> int:
    vs = dt.vertices
    for i in (1, 2, 3):
        if i != entry and in_arc(vs[i - 1], vs[i % 3], x):
            return i
    raise ValueError("%s is a vertex of the tile" % x)


@dataclass(frozen=True)
class RayTrace:
    outcome: str  # "vertex", "repeat" or "budget"
    tiles: tuple  # V-sequence: tile types crossed
    labels: tuple  # W-sequence: labels of sides crossed
    last: DevelopedTile
    witness: Optional[GroupElement] = None  # vertex: h(∞) = target; repeat: hyperbolic fixing target
    word: tuple = ()
    steps: int = 0


def _is_fixed(g: GroupElement, x: ExtendedRational) -> bool:
    return g(x) == x


def trace_ray(g: JigsawGroup, start: DevelopedTile, target, max_steps: int = 1000) -> RayTrace:
    """Follow the geodesic ray from inside ``start`` towards ``target``.

    Stops when ``target`` becomes a vertex of the current triangle (its
    witness then maps ∞ to ``target``), when a pair of visits to the same
    tile and entry side differs by a hyperbolic element fixing ``target``,
    or when the step budget runs out.
    """
    j = g.jigsaw
    x = ExtendedRational.of(target)
    cur, entry = start, None
    types, labels = [], []
    seen = {}
    for step in range(max_steps + 1):
        types.append(j.tiles[cur.tile])
        v = cur.vertex_index(x)
        if v is not None:
            h, w = vertex_witness(g, cur, v)
            return RayTrace("vertex", tuple(types), tuple(labels), cur, h, w, step)
        key = (cur.tile, entry)
        for old in seen.get(key, ()):
            cand = compose(cur.placement, inverse(old.placement))
            if cand.kind() == "hyperbolic" and _is_fixed(cand, x):
                w = word_concat(cur.word, word_inverse(old.word))
                return RayTrace("repeat", tuple(types), tuple(labels), cur, cand, w, step)
        seen.setdefault(key, []).append(cur)
        if step == max_steps:
            break
        s = exit_side(cur, x, entry)
        labels.append(j.tiles[cur.tile].label(s))
        cur, entry = neighbor(g, cur, s)
    return RayTrace("budget", tuple(types), tuple(labels), cur, None, (), max_steps)


# ---------------------------------------------------------------- special walk


@dataclass(frozen=True)
class WalkState:
    tile: int
    entry: int
    phase: int

    def __str__(self):
        return "(tile %d, side %d, phase %d)" % (self.tile, self.entry, self.phase)


@dataclass(frozen=True)
class Dies:
    state: WalkState
    steps: int


@dataclass(frozen=True)
class Cycles:
    states: tuple  # the repeating states, in walk order
    word: tuple  # generators crossed along one turn, starting at states[0]


_D3 = delta(3)


def _side_with_label(k: Fraction) -> int:
    return _D3.labels.index(k) + 1


def walk_step(j, st: WalkState):
    """Next state and the generator crossed (or ``None``); ``None`` state = dies."""
    if j.tiles[st.tile] != _D3:
        return None, None
    nxt_phase = (st.phase + 1) % 4
    out = _side_with_label(SPECIAL_PERIOD[nxt_phase])
    nb = j.adjacency.get((st.tile, out))
    if nb is None:
        return WalkState(st.tile, out, nxt_phase), j.generator_index[(st.tile, out)]
    u, s2 = nb
    if j.tiles[u] != _D3:
        return None, None
    return WalkState(u, s2, nxt_phase), None


def valid_states(j):
    """All states with the entry label equal to the phase letter, on ``Δ(1,1/3,3)`` tiles."""
    out = []
    for t, tile in enumerate(j.tiles):
        if tile != _D3:
            continue
        for p, k in enumerate(SPECIAL_PERIOD):
            out.append(WalkState(t, _side_with_label(k), p))
    return out


def _cycle_from(states, j):
    word = []
    for st in states:
        _, gen = walk_step(j, st)
        if gen is not None:
            word.append(gen)
    return Cycles(tuple(states), tuple(word))


def special_walk(j, start: WalkState, max_steps=None):
    """Run the deterministic ``3, 1, 1/3, 1`` walk from ``start``."""
    if max_steps is None:
        max_steps = 4 * 3 * j.size + 1
    order = {start: 0}
    path = [start]
    st = start
    for step in range(1, max_steps + 1):
        nxt, _ = walk_step(j, st)
        if nxt is None:
            return Dies(st, step)
        if nxt in order:
            states = tuple(path[order[nxt]:])
            # rotate so the cycle starts at its least state, for determinism
            i = min(range(len(states)), key=lambda k: (states[k].tile, states[k].entry, states[k].phase))
            return _cycle_from(states[i:] + states[:i], j)
        order[nxt] = len(path)
        path.append(nxt)
        st = nxt
    raise AssertionError("walk exceeded the size of its state space")


def find_cycles(j):
    """Distinct cycles of the special walk over all valid start states."""
    seen = set()
    out = []
    for st in valid_states(j):
        r = special_walk(j, st)
        if isinstance(r, Cycles) and r.states[0] not in seen:
            seen.update(r.states)
            out.append(r)
    return out


@dataclass(frozen=True)
class SpecialPoint:
    point: ExtendedRational
    witness: GroupElement  # hyperbolic, point is its repelling fixed point
    word: tuple


def repelling_at(h: GroupElement, x: ExtendedRational) -> GroupElement:
    """``h`` or its inverse, whichever has ``x`` as repelling fixed point."""
    if x.is_infinite:
        rep = abs(h.m11) < abs(h.m22)
    else:
        v = h.m21 * x.to_fraction() + h.m22
        rep = v * v < h.d
    return h if rep else inverse(h)


def special_endpoints(g: JigsawGroup, cycle: Cycles):
    """Endpoints of the cycle's geodesic lifted through width-3 strip triangles.

    For each state of the cycle the lift through the corresponding strip
    triangle ``[∞, m, m+3]`` (the tile's width-3 vertex at ∞) has rational
    endpoints; both are returned with a hyperbolic witness, one entry per
    (point, state).
    """
    j = g.jigsaw
    _, corner = _period(g)
    gens = g.generators
    cyc = evaluate_word(cycle.word, gens)
    if cyc.kind() != "hyperbolic":
        raise AssertionError("cycle element is not hyperbolic")
    prefix = ()
    out = []
    for st in cycle.states:
        s = corner.get((st.tile, 3))
        if s is None:
            raise NoStripLift("tile %d has no width-3 strip lift" % st.tile)
        # the walk's copy of st.tile is eval(prefix) * B_t; move it onto the strip lift
        hw = word_concat(s.dev.word, word_inverse(prefix))
        w = word_concat(hw, cycle.word, word_inverse(hw))
        elem = evaluate_word(w, gens)
        for x in rational_fixed_points(elem):
            out.append(SpecialPoint(x, repelling_at(elem, x), w))
        _, gen = walk_step(j, st)
        if gen is not None:
            prefix = word_concat(prefix, (gen,))
    return out

