"""SVG pictures of the developed triangulation near ∞.

All geometry is exact until the final coordinate conversion, which rounds
to 12 significant digits.  The output is a plain string and is identical
for identical inputs.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .develop import cusp_strip, neighbor
from .exact import apply_to_upper, rational_fixed_points
from .tiles import side_after, std_marked_points

WIDTH = 800
HEIGHT = 480
MARGIN = 20


def _num(x: float) -> str:
    s = format(x, ".12g")
    return "0" if s == "-0" else s


class _Frame:
    def __init__(self, a: Fraction, b: Fraction):
        self.a, self.b = a, b
        self.scale = (WIDTH - 2 * MARGIN) / float(b - a)
        self.base = HEIGHT - MARGIN

    def x(self, v) -> str:
        return _num(MARGIN + float(Fraction(v) - self.a) * self.scale)

    def y(self, h: float) -> str:
        return _num(self.base - h * self.scale)

    def r(self, v) -> str:
        return _num(float(v) * self.scale)


def _header(extra=""):
    return ('<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
            'viewBox="0 0 %d %d"%s>' % (WIDTH, HEIGHT, WIDTH, HEIGHT, extra))


def _collect(g, strip, depth, a, b):
    """Developed triangles: the strip plus ``depth`` levels hanging below it."""
    tris = [(t.dev) for t in strip.triangles]
    frontier = [(t.dev, t.bottom_side) for t in strip.triangles]
    for _ in range(depth):
        nxt = []
        for dt, side in frontier:
            nb, entry = neighbor(g, dt, side)
            vs = [v.to_fraction() for v in nb.vertices if not v.is_infinite]
            if max(vs) <= a or min(vs) >= b:
                continue
            tris.append(nb)
            nxt.append((nb, side_after(entry, 1)))
            nxt.append((nb, side_after(entry, 2)))
        frontier = nxt
    return tris


def _edge_key(p, q):
    return tuple(sorted((p, q)))


def render_svg(g, window=None, depth: int = 2, cover=None) -> str:
    """SVG of the triangulation over ``window = (a, b)``.

    Draws geodesic sides, marked points, killer intervals of ``cover`` as
    shaded strips and the axes of any specials the cover knows about.
    """
    j = g.jigsaw
    if window is None:
        strip = cusp_strip(g)
        a, b = strip.start, strip.start + strip.L
    else:
        a, b = Fraction(window[0]), Fraction(window[1])
    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    if a >= b:
        lines.append(_header(' data-empty="true"'))
        lines.append('<g id="tiles" data-tiles="%d"></g>' % j.size)
        lines.append("</svg>")
        return "\n".join(lines) + "\n"
    fr = _Frame(a, b)
    # a strip wide enough to contain every triangle meeting the window
    periods = int(math.ceil((b - a) / g.L)) + 1
    tris = []
    start = a - g.L
    for k in range(periods + 1):
        strip = cusp_strip(g, start + k * g.L)
        tris.extend(_collect(g, strip, depth, a, b))
    seen_tri = set()
    edges = {}
    marks = {}
    for dt in tris:
        key = (dt.tile, dt.placement)
        if key in seen_tri:
            continue
        seen_tri.add(key)
        vs = dt.vertices
        tile = j.tiles[dt.tile]
        for i in (1, 2, 3):
            p, q = vs[i - 1], vs[i % 3]
            edges.setdefault(_edge_key(p, q), (p, q))
            mx, mh2 = std_marked_points(tile)[i - 1]
            re, im2 = apply_to_upper(dt.placement, mx, mh2)
            marks.setdefault((re, im2), tile.label(i))

    lines.append(_header())
    lines.append('<rect x="0" y="0" width="%d" height="%d" fill="white"/>' % (WIDTH, HEIGHT))
    lines.append('<defs><clipPath id="view"><rect x="%s" y="0" width="%s" height="%d"/></clipPath></defs>'
                 % (fr.x(a), _num(float(b - a) * fr.scale), HEIGHT))
    if cover is not None:
        lines.append('<g id="killer" fill="#4a90d9" fill-opacity="0.18" clip-path="url(#view)">')
        for iv in cover.intervals:
            lines.append('<rect x="%s" y="%d" width="%s" height="%d" data-center="%s"/>'
                         % (fr.x(iv.left), fr.base, fr.r(2 * iv.radius), MARGIN // 2, iv.center))
        lines.append("</g>")
    lines.append('<g id="tiles" data-tiles="%d" fill="none" stroke="black" stroke-width="1" '
                 'clip-path="url(#view)">' % j.size)
    for key in sorted(edges, key=lambda e: (str(e[0]), str(e[1]))):
        p, q = edges[key]
        if p.is_infinite or q.is_infinite:
            m = (q if p.is_infinite else p).to_fraction()
            lines.append('<line x1="%s" y1="0" x2="%s" y2="%s"/>' % (fr.x(m), fr.x(m), _num(fr.base)))
        else:
            lo, hi = sorted((p.to_fraction(), q.to_fraction()))
            rad = (hi - lo) / 2
            lines.append('<path d="M %s %s A %s %s 0 0 1 %s %s"/>'
                         % (fr.x(lo), _num(fr.base), fr.r(rad), fr.r(rad), fr.x(hi), _num(fr.base)))
    lines.append("</g>")
    lines.append('<g id="marked" fill="#c0392b" clip-path="url(#view)">')
    for (re, im2) in sorted(marks):
        lines.append('<circle cx="%s" cy="%s" r="2.5" data-label="%s"/>'
                     % (fr.x(re), fr.y(math.sqrt(im2)), marks[(re, im2)]))
    lines.append("</g>")
    if cover is not None and cover.specials:
        lines.append('<g id="specials" fill="none" stroke="#27ae60" stroke-width="2" clip-path="url(#view)">')
        axes = set()
        for x, (elem, _) in sorted(cover.specials.items(), key=lambda kv: kv[0]):
            fps = [p for p in rational_fixed_points(elem) if not p.is_infinite]
            if len(fps) == 2:
                axes.add(tuple(p.to_fraction() for p in fps))
        for lo, hi in sorted(axes):
            rad = (hi - lo) / 2
            lines.append('<path d="M %s %s A %s %s 0 0 1 %s %s" data-axis="%s %s"/>'
                         % (fr.x(lo), _num(fr.base), fr.r(rad), fr.r(rad), fr.x(hi), _num(fr.base),
                            _fmtq(lo), _fmtq(hi)))
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _fmtq(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else "%d/%d" % (v.numerator, v.denominator)
