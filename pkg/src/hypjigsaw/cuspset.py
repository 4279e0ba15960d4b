"""Killer intervals, covers of a fundamental interval and the cusp-set verdict."""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import (
    D1,
    D2,
    D3,
    Arithmetic,
    arithmeticity_check,
    family,
    tangency_pattern,
)
from .develop import (
    cusp_strip,
    find_cycles,
    neighbor,
    repelling_at,
    special_endpoints,
    trace_ray,
    vertex_witness,
)
from .errors import FixesInfinity
from .exact import (
    INF,
    ExtendedRational,
    GroupElement,
    apply_word,
    compose,
    evaluate_word,
    inverse,
    translation,
    word_concat,
    word_inverse,
)
from .jigsaw import JigsawGroup
from .tiles import side_after


@dataclass(frozen=True)
class KillerInterval:
    center: ExtendedRational
    radius: Fraction
    witness: GroupElement
    contraction: int
    word: Optional[tuple] = None  # eval(word) == witness, when known
    left: Fraction = field(init=False, compare=False)
    right: Fraction = field(init=False, compare=False)
    inverse: GroupElement = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        c = self.center.to_fraction()
        object.__setattr__(self, "left", c - self.radius)
        object.__setattr__(self, "right", c + self.radius)
        object.__setattr__(self, "inverse", inverse(self.witness))

    def contains(self, x: ExtendedRational) -> bool:
        """Strict membership: the interval is open."""
        if x.is_infinite:
            return False
        return self.left < x.to_fraction() < self.right

    def __str__(self):
        return "(%s, %s) about %s" % (_fmt(self.left), _fmt(self.right), self.center)


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


def killer_interval(g: GroupElement, word=None) -> KillerInterval:
    """Interval about ``g(∞)`` where ``g^-1`` strictly lowers denominators."""
    a, c = g.m11, g.m21
    if c == 0:
        raise FixesInfinity("g fixes ∞, so there is no killer interval")
    k = math.gcd(a, c)
    c1 = abs(c) // k
    return KillerInterval(ExtendedRational.from_pair(a, c), Fraction(1, k * c1), g, k, word)


def shift_killer(g: GroupElement, n: int) -> KillerInterval:
    """Killer interval of ``T^n g T^-n``: same radius, centre moved by ``n``."""
    h = compose(compose(translation(n), g), translation(-n))
    return killer_interval(h)


# ---------------------------------------------------------------- cover

COMPLETE = "complete"
POINT_GAPS = "point-gaps"
INTERVAL_GAP = "interval-gap"


@dataclass(eq=False)
class Cover:
    start: Fraction
    L: Fraction
    intervals: tuple
    uncovered: tuple  # isolated uncovered points, increasing
    gaps: tuple  # ((a, b), ...) uncovered stretches of positive length
    status: str
    strip: object = field(repr=False, default=None)
    specials: dict = field(repr=False, default_factory=dict)  # point -> SpecialPoint in window

    def __post_init__(self):
        self._by_center = {}
        for iv in self.intervals:
            self._by_center.setdefault(iv.center, iv)
        self._by_pair = {(iv.center.num, iv.center.den): iv for iv in reversed(self.intervals)}
        self._reach = []  # running maximum of right ends
        for iv in self.intervals:
            self._reach.append(iv.right if not self._reach else max(self._reach[-1], iv.right))
        self._reach_pairs = [(r.numerator, r.denominator) for r in self._reach]

    def center_interval(self, x: ExtendedRational):
        return self._by_center.get(x)

    def containing(self, x: ExtendedRational):
        """First interval (in order of left end) containing ``x``."""
        if x.is_infinite:
            return None
        f = x.to_fraction()
        i = bisect_right(self._reach, f)
        if i < len(self.intervals) and self.intervals[i].left < f:
            return self.intervals[i]
        return None

    def _containing_pair(self, p: int, q: int):
        """:meth:`containing` for ``p/q`` with ``q > 0``, on plain integers."""
        reach = self._reach_pairs
        lo, hi = 0, len(reach)
        while lo < hi:
            mid = (lo + hi) // 2
            rn, rd = reach[mid]
            if rn * q <= p * rd:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(reach):
            left = self.intervals[lo].left
            if left.numerator * q < p * left.denominator:
                return self.intervals[lo]
        return None


def _complement(intervals, a: Fraction, b: Fraction):
    """Uncovered points and stretches of ``[a, b]`` given open intervals with covered centres."""
    centers = {iv.center.to_fraction() for iv in intervals}
    merged = []
    for lo, hi in sorted((iv.left, iv.right) for iv in intervals):
        if merged and lo < merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    pieces = []  # closed uncovered pieces [p, q]
    pos = a  # leftmost point not yet known to be covered
    for lo, hi in merged:
        if hi <= pos:
            continue
        if lo > b:
            break
        if lo >= pos:
            pieces.append((pos, lo))
        pos = hi
        if pos > b:
            break
    if pos <= b:
        pieces.append((pos, b))
    points = tuple(p for p, q in pieces if p == q and p not in centers)
    gaps = tuple((p, q) for p, q in pieces if p < q)
    return points, gaps


def _mid_cusps(g: JigsawGroup, strip, levels: int, wide_only: bool):
    """Killer intervals at vertices of triangles hanging below the strip."""
    out = []
    frontier = [(t.dev, t.bottom_side) for t in strip.triangles if not wide_only or t.width > 1]
    for _ in range(levels):
        nxt = []
        for dt, side in frontier:
            nb, entry = neighbor(g, dt, side)
            v = side_after(entry, 2)
            h, w = vertex_witness(g, nb, v)
            out.append(killer_interval(h, w))
            nxt.append((nb, side_after(entry, 1)))
            nxt.append((nb, side_after(entry, 2)))
        frontier = nxt
    return out


def _in_window(iv: KillerInterval, a: Fraction, b: Fraction) -> bool:
    return iv.right > a and iv.left < b


def _window_specials(g: JigsawGroup, start: Fraction):
    """Specials from the special walk, moved into ``[start, start + L)``."""
    L = g.L
    found = {}
    for cyc in find_cycles(g.jigsaw):
        for sp in special_endpoints(g, cyc):
            p = sp.point.to_fraction()
            t = (p - start) // L
            x = ExtendedRational.of(p - t * L)
            tw = g.translation_word(-t) if t else ()
            w = word_concat(tw, sp.word, word_inverse(tw))
            elem = repelling_at(evaluate_word(w, g.generators), x)
            key = (len(w), elem.d, abs(elem.m11) + abs(elem.m12) + abs(elem.m21) + abs(elem.m22))
            if x not in found or key < found[x][0]:
                found[x] = (key, elem, w)
    return {x: (elem, w) for x, (_, elem, w) in found.items()}


def build_cover(g: JigsawGroup, depth: int = 0, start=None) -> Cover:
    """Cover one period by killer intervals about strip cusps.

    Uses the feet of vertical sides in the window and the third vertex of
    the triangle below each strip triangle wider than 1.  If a stretch of
    positive length stays uncovered, up to ``depth`` further developing
    levels below every strip triangle are added.
    """
    strip = cusp_strip(g, start)
    a, b = strip.start, strip.start + strip.L
    ivs = [killer_interval(s.witness, s.witness_word) for s in strip.sides]
    ivs += [iv for iv in _mid_cusps(g, strip, 1, True) if _in_window(iv, a, b)]
    points, gaps = _complement(ivs, a, b)
    level = 1
    while gaps and level <= depth:
        level += 1
        extra = [iv for iv in _mid_cusps(g, strip, level, False) if _in_window(iv, a, b)]
        have = {iv.center for iv in ivs}
        ivs += [iv for iv in extra if iv.center not in have and not have.add(iv.center)]
        points, gaps = _complement(ivs, a, b)
    ivs.sort(key=lambda iv: (iv.left, iv.right))
    status = INTERVAL_GAP if gaps else (POINT_GAPS if points else COMPLETE)
    specials = _window_specials(g, a) if points and D3 in g.jigsaw.tiles else {}
    return Cover(a, strip.L, tuple(ivs), tuple(ExtendedRational.of(p) for p in points),
                 gaps, status, strip, specials)


# ---------------------------------------------------------------- reduction


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # translate, killer, center, vertex, special
    point: ExtendedRational
    denominator: int
    interval: Optional[KillerInterval] = None
    matrix: Optional[GroupElement] = None


@dataclass(frozen=True)
class Cusp:
    point: ExtendedRational
    word: tuple  # eval(word)(point) == ∞
    steps: tuple = ()

    kind = "cusp"


@dataclass(frozen=True)
class Special:
    point: ExtendedRational
    witness: GroupElement  # hyperbolic, fixes point
    word: tuple = ()
    steps: tuple = ()

    kind = "special"


@dataclass(frozen=True)
class Unknown:
    point: ExtendedRational
    budget: int
    steps: tuple = ()

    kind = "unknown"


def default_budget(x: ExtendedRational) -> int:
    return 10 * max(1, x.den.bit_length()) + 64


def _strip_triangle_over(cover: Cover, x: Fraction):
    for t in cover.strip.triangles:
        if t.left < x < t.right:
            return t
    raise AssertionError("no strip triangle above %s" % x)


def reduce_point(g: JigsawGroup, cover: Cover, x, budget=None, trace: bool = True):
    """Send ``x`` to ∞ with killer intervals, or certify it special.

    Each killer step strictly lowers the denominator.  A cusp verdict
    carries a word whose value sends ``x`` to ∞, checked before returning.
    With ``trace=False`` the per-step record is skipped.
    """
    x0 = ExtendedRational.of(x)
    if x0.is_infinite:
        return Cusp(x0, (), ())
    if budget is None:
        budget = default_budget(x0)
    gens = g.generators
    L, s = cover.L, cover.start
    sn, sd, ln, ld = s.numerator, s.denominator, L.numerator, L.denominator
    p, q = x0.num, x0.den
    parts = []  # word segments, last applied first: eval(reversed parts)(x0) == p/q
    steps = []

    def here():
        return ExtendedRational(p, q) if q else INF

    def record(kind, interval=None, matrix=None):
        if trace:
            steps.append(ReductionStep(kind, here(), q, interval, matrix))

    def acc():
        return word_concat(*reversed(parts))

    def finish_cusp(word):
        w = word_concat(word, acc())
        if apply_word(w, gens, x0) != INF:
            raise AssertionError("cusp word does not send %s to ∞" % x0)
        return Cusp(x0, w, tuple(steps))

    def finish_special(elem, word):
        a = acc()
        conj = word_concat(word_inverse(a), word, a)
        wit = repelling_at(evaluate_word(conj, gens), x0)
        if wit.kind() != "hyperbolic" or wit(x0) != x0:
            raise AssertionError("special witness does not fix %s" % x0)
        return Special(x0, wit, conj, tuple(steps))

    for _ in range(budget):
        # t = floor((p/q - s) / L)
        t = ((p * sd - sn * q) * ld) // (q * sd * ln)
        if t:
            num, den = p * ld - t * ln * q, q * ld
            k = math.gcd(num, den)
            p, q = num // k, den // k
            parts.append(g.translation_word(-t))
            record("translate", None, translation(-t * L) if trace else None)
        iv = cover._by_pair.get((p, q))
        if iv is not None:
            record("center", iv, iv.inverse)
            return finish_cusp(word_inverse(iv.word))
        iv = cover._containing_pair(p, q)
        if iv is not None:
            np_, nq = iv.inverse.act(p, q)
            if nq and nq >= q:
                raise AssertionError("denominator did not drop inside %s" % iv)
            p, q = np_, nq
            parts.append(word_inverse(iv.word))
            record("killer", iv, iv.inverse)
            if not q:
                return finish_cusp(())
            continue
        cur = here()
        sp = cover.specials.get(cur)
        if sp is not None:
            elem, w = sp
            record("special", None, elem)
            return finish_special(elem, w)
        tri = _strip_triangle_over(cover, cur.to_fraction())
        ray = trace_ray(g, tri.dev, cur, max_steps=max(64, 4 * budget))
        if ray.outcome == "vertex":
            record("vertex", None, inverse(ray.witness))
            return finish_cusp(word_inverse(ray.word))
        if ray.outcome == "repeat":
            record("special", None, ray.witness)
            return finish_special(ray.witness, ray.word)
        break
    return Unknown(x0, budget, tuple(steps))


# ---------------------------------------------------------------- classification

ARITHMETIC = "arithmetic"
PSEUDOMODULAR = "pseudomodular"
SPECIALS = "specials"
INCONCLUSIVE = "inconclusive"


def in_scope(j) -> bool:
    kinds = set(j.tiles)
    if kinds <= {D1, D2} or kinds <= {D1, D3}:
        return True
    return j.size == 1 and j.tiles[0].integral_n is not None


@dataclass(eq=False)
class ClassificationReport:
    verdict: str
    L: Fraction
    signature: tuple
    tile_set: tuple
    boundary_labels: tuple
    arithmetic: object  # Arithmetic | NonArithmetic | None
    cover: Optional[Cover]
    points: tuple  # verdicts for the cover's uncovered points
    specials: tuple  # Special verdicts among them
    tangency: object
    family: Optional[str]
    cycles: int  # number of special-walk cycles (S(1,3) cross-check)
    notes: tuple = ()


def classify_group(g: JigsawGroup, depth: int = 2, budget=None, start=None) -> ClassificationReport:
    j = g.jigsaw
    notes = []
    integral = j.is_integral
    arith = arithmeticity_check(g) if integral else None
    cover = build_cover(g, depth, start) if integral else None
    verdicts = tuple(reduce_point(g, cover, p, budget) for p in cover.uncovered) if cover else ()
    specials = tuple(v for v in verdicts if isinstance(v, Special))
    unknown = [v for v in verdicts if isinstance(v, Unknown)]
    cycles = len(find_cycles(j)) if D3 in j.tiles else 0
    if not integral:
        verdict = INCONCLUSIVE
        notes.append("non-integral tiles")
    elif isinstance(arith, Arithmetic):
        verdict = ARITHMETIC
    elif not in_scope(j):
        verdict = INCONCLUSIVE
        notes.append("tile set outside the supported families")
    elif cover.status == INTERVAL_GAP:
        verdict = INCONCLUSIVE
        notes.append("killer intervals leave gaps %s" % [(str(a), str(b)) for a, b in cover.gaps])
    elif unknown:
        verdict = INCONCLUSIVE
        notes.append("unresolved points %s" % [str(v.point) for v in unknown])
    elif specials:
        verdict = SPECIALS
    else:
        verdict = PSEUDOMODULAR
    return ClassificationReport(
        verdict=verdict,
        L=j.L,
        signature=j.signature,
        tile_set=j.tile_set,
        boundary_labels=j.boundary_labels(),
        arithmetic=arith,
        cover=cover,
        points=verdicts,
        specials=specials,
        tangency=tangency_pattern(g) if integral else None,
        family=family(j),
        cycles=cycles,
        notes=tuple(notes),
    )
