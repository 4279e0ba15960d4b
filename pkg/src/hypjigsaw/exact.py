"""Exact boundary points and projective group elements.

Every isometry handled by the package has the shape ``M / sqrt(d)`` with
``M`` an integer matrix and ``det(M) = d > 0``.  Storing the primitive
integer matrix is enough: ``d`` is then its determinant, and the Möbius
action never sees the scalar.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DeterminantMismatch, IdentityElement, ZeroMatrix

Word = tuple  # tuple[int, ...] of generator indices, freely reduced


@functools.total_ordering
@dataclass(frozen=True)
class ExtendedRational:
    """A point of Q ∪ {∞}; ``den == 0`` encodes ∞ as ``1/0``."""

    num: int
    den: int

    def __post_init__(self):
        if self.den < 0:
            raise ValueError("denominator must be non-negative")
        if self.den == 0:
            if self.num != 1:
                raise ValueError("infinity must be encoded as 1/0")
        elif math.gcd(self.num, self.den) != 1:
            raise ValueError("%d/%d is not in lowest terms" % (self.num, self.den))

    @classmethod
    def from_pair(cls, p: int, q: int) -> "ExtendedRational":
        if q == 0:
            if p == 0:
                raise ValueError("0/0 is not a point")
            return INF
        if q < 0:
            p, q = -p, -q
        g = math.gcd(p, q)
        return cls(p // g, q // g)

    @classmethod
    def of(cls, x) -> "ExtendedRational":
        if isinstance(x, ExtendedRational):
            return x
        if isinstance(x, bool):
            raise TypeError("booleans are not points")
        if isinstance(x, int):
            return cls(x, 1)
        if isinstance(x, Fraction):
            return cls(x.numerator, x.denominator)
        if isinstance(x, str):
            return parse_point(x)
        raise TypeError("cannot interpret %r as a point of Q ∪ {∞}" % (x,))

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    def to_fraction(self) -> Fraction:
        if self.den == 0:
            raise ValueError("∞ has no finite value")
        return Fraction(self.num, self.den)

    def __lt__(self, other):
        other = ExtendedRational.of(other)
        if self.den == 0:
            return False
        if other.den == 0:
            return True
        return self.num * other.den < other.num * self.den

    def __str__(self):
        if self.den == 0:
            return "inf"
        if self.den == 1:
            return str(self.num)
        return "%d/%d" % (self.num, self.den)

    def __repr__(self):
        return "ExtendedRational(%s)" % self


INF = ExtendedRational(1, 0)


def parse_point(text: str) -> ExtendedRational:
    s = text.strip().replace(" ", "")
    if s.lower() in ("inf", "infinity", "oo", "∞", "1/0"):
        return INF
    try:
        return ExtendedRational.of(Fraction(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError("not a rational number: %r" % text) from exc


def _content(*xs: int) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, x)
    return g


def _isqrt_exact(n: int):
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def _canonical(a: int, b: int, c: int, d: int):
    g = _content(a, b, c, d)
    a, b, c, d = a // g, b // g, c // g, d // g
    lead = next(x for x in (a, b, c, d) if x)
    if lead < 0:
        a, b, c, d = -a, -b, -c, -d
    return a, b, c, d


@dataclass(frozen=True)
class GroupElement:
    """The projective class of ``(1/sqrt(d)) * [[m11, m12], [m21, m22]]``.

    Instances are always canonical: the integer matrix is primitive, its
    first nonzero entry is positive and ``d`` equals its determinant.  Use
    :func:`normalize` (or :meth:`from_rational`) to build one from arbitrary
    input.
    """

    m11: int
    m12: int
    m21: int
    m22: int
    d: int

    def __post_init__(self):
        if self.m11 * self.m22 - self.m12 * self.m21 != self.d or self.d <= 0:
            raise DeterminantMismatch("det(M) must equal d > 0; use normalize()")
        if (self.m11, self.m12, self.m21, self.m22) != _canonical(
                self.m11, self.m12, self.m21, self.m22):
            raise ValueError("matrix is not in canonical form; use normalize()")

    @classmethod
    def _raw(cls, a, b, c, d):
        a, b, c, d = _canonical(a, b, c, d)
        det = a * d - b * c
        if det <= 0:
            raise DeterminantMismatch("orientation-reversing or singular matrix")
        return cls(a, b, c, d, det)

    @classmethod
    def from_rational(cls, a, b, c, d) -> "GroupElement":
        """Projective class of a rational matrix with positive determinant."""
        entries = [Fraction(x) for x in (a, b, c, d)]
        if not any(entries):
            raise ZeroMatrix("zero matrix")
        lcm = 1
        for x in entries:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        ints = [int(x * lcm) for x in entries]
        return cls._raw(*ints)

    @property
    def matrix(self):
        return ((self.m11, self.m12), (self.m21, self.m22))

    @property
    def trace(self) -> int:
        return self.m11 + self.m22

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def inverse(self) -> "GroupElement":
        return inverse(self)

    def __call__(self, x):
        return apply(self, x)

    def act(self, p: int, q: int):
        """Möbius action on the homogeneous pair ``(p, q)``, reduced."""
        u = self.m11 * p + self.m12 * q
        v = self.m21 * p + self.m22 * q
        if v < 0:
            u, v = -u, -v
        g = math.gcd(u, v)
        return u // g, v // g

    def trace_squared(self) -> Fraction:
        return trace_squared(self)

    def is_identity(self) -> bool:
        return self.m12 == 0 and self.m21 == 0 and self.m11 == self.m22

    def kind(self) -> str:
        """One of ``identity``, ``elliptic``, ``parabolic``, ``hyperbolic``."""
        if self.is_identity():
            return "identity"
        t2 = self.trace * self.trace
        if t2 < 4 * self.d:
            return "elliptic"
        if t2 == 4 * self.d:
            return "parabolic"
        return "hyperbolic"

    def fixed_points(self):
        return rational_fixed_points(self)

    def to_json(self):
        return {"matrix": [[self.m11, self.m12], [self.m21, self.m22]], "d": self.d}

    @classmethod
    def from_json(cls, obj) -> "GroupElement":
        (a, b), (c, d) = obj["matrix"]
        return normalize((a, b, c, d), obj["d"])

    def __str__(self):
        body = "[[%d, %d], [%d, %d]]" % (self.m11, self.m12, self.m21, self.m22)
        if self.d == 1:
            return body
        r = _isqrt_exact(self.d)
        return "(1/%d)%s" % (r, body) if r is not None else "(1/sqrt(%d))%s" % (self.d, body)


def normalize(m: Sequence[int], d: int) -> GroupElement:
    """Canonical representative of ``(1/sqrt(d)) * M``.

    ``m`` is ``(m11, m12, m21, m22)`` or a nested 2x2 sequence.  The pair is
    accepted whenever some rational rescaling of ``M`` has determinant ``d``,
    i.e. ``d / det(M)`` is the square of a rational.
    """
    if len(m) == 2:
        (a, b), (c, e) = m
    else:
        a, b, c, e = m
    if d <= 0:
        raise DeterminantMismatch("d must be positive")
    if a == b == c == e == 0:
        raise ZeroMatrix("zero matrix")
    det = a * e - b * c
    if det <= 0:
        raise DeterminantMismatch("det(M) = %d cannot be rescaled to %d" % (det, d))
    ratio = Fraction(d, det)
    if _isqrt_exact(ratio.numerator) is None or _isqrt_exact(ratio.denominator) is None:
        raise DeterminantMismatch("d/det(M) = %s is not a rational square" % ratio)
    return GroupElement._raw(a, b, c, e)


IDENTITY = GroupElement(1, 0, 0, 1, 1)
T = GroupElement(1, 1, 0, 1, 1)


def translation(n) -> GroupElement:
    n = Fraction(n)
    return GroupElement._raw(n.denominator, n.numerator, 0, n.denominator)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    return GroupElement._raw(
        g.m11 * h.m11 + g.m12 * h.m21,
        g.m11 * h.m12 + g.m12 * h.m22,
        g.m21 * h.m11 + g.m22 * h.m21,
        g.m21 * h.m12 + g.m22 * h.m22,
    )


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement._raw(g.m22, -g.m12, -g.m21, g.m11)


def product(elements: Iterable[GroupElement]) -> GroupElement:
    out = IDENTITY
    for e in elements:
        out = compose(out, e)
    return out


def apply(g: GroupElement, x) -> ExtendedRational:
    x = ExtendedRational.of(x)
    return ExtendedRational.from_pair(*g.act(x.num, x.den))


def apply_to_upper(g: GroupElement, x: Fraction, h2: Fraction):
    """Image of ``x + sqrt(h2) i`` as an exact pair ``(real part, height^2)``."""
    a, b, c, d = g.m11, g.m12, g.m21, g.m22
    x, h2 = Fraction(x), Fraction(h2)
    denom = (c * x + d) ** 2 + c * c * h2
    re = ((a * x + b) * (c * x + d) + a * c * h2) / denom
    im2 = g.d * g.d * h2 / (denom * denom)
    return re, im2


def trace_squared(g: GroupElement) -> Fraction:
    return Fraction(g.trace * g.trace, g.d)


def rational_fixed_points(g: GroupElement):
    """Fixed points of ``g`` lying in Q ∪ {∞}, sorted with ∞ last.

    Elliptic elements and hyperbolic elements whose axis has irrational
    endpoints give ``()``; parabolic elements give one point.
    """
    if g.is_identity():
        raise IdentityElement("the identity fixes every point")
    a, b, c, d = g.m11, g.m12, g.m21, g.m22
    if c == 0:
        if a == d:
            return (INF,)
        return tuple(sorted((ExtendedRational.from_pair(b, d - a), INF)))
    disc = (a + d) ** 2 - 4 * g.d
    root = _isqrt_exact(disc)
    if root is None:
        return ()
    pts = {ExtendedRational.from_pair(a - d + s, 2 * c) for s in (root, -root)}
    return tuple(sorted(pts))


def reduce_word(letters: Iterable[int]) -> Word:
    """Free reduction in a free product of order-two groups."""
    out = []
    for x in letters:
        if out and out[-1] == x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def word_inverse(w: Word) -> Word:
    return tuple(reversed(w))


def word_concat(*words: Word) -> Word:
    return reduce_word(x for w in words for x in w)


def evaluate_word(word: Word, generators: Sequence[GroupElement]) -> GroupElement:
    return product(generators[i] for i in word)


def apply_word(word: Word, generators: Sequence[GroupElement], x) -> ExtendedRational:
    """``eval(word)(x)``, applying generators one at a time (right to left)."""
    p = ExtendedRational.of(x)
    u, v = p.num, p.den
    for i in reversed(word):
        u, v = generators[i].act(u, v)
    return ExtendedRational.from_pair(u, v)
