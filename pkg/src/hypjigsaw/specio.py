"""JSON reading and writing for jigsaw specs and classification reports.

Spec documents look like::

    {"tiles": [[1, 1, 1, 3, 3, 1], 1], "gluings": [[0, 1, 1, 1]]}

A tile is six integers ``k1num, k1den, k2num, k2den, k3num, k3den`` or an
integer ``n`` meaning ``Δ(1, 1/n, n)``.  Tile indices are 0-based, side
indices 1-based and refer to the tile as written.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import NotBalanced, SpecParseError
from .exact import ExtendedRational, GroupElement
from .jigsaw import JigsawSpec
from .tiles import canonical_rotation, delta, fmt_label, side_after


def _parse_tile(item, where):
    if isinstance(item, bool):
        raise SpecParseError("%s: expected an integer or six integers" % where)
    try:
        if isinstance(item, int):
            if item < 1:
                raise SpecParseError("%s: integral shorthand must be positive" % where)
            return delta(item), 0
        if isinstance(item, list) and len(item) == 6 and all(isinstance(x, int) and not isinstance(x, bool) for x in item):
            if 0 in item[1::2]:
                raise SpecParseError("%s: zero denominator" % where)
            ks = [Fraction(item[i], item[i + 1]) for i in (0, 2, 4)]
            return canonical_rotation(*ks)
        if isinstance(item, list) and len(item) == 3:
            return canonical_rotation(*(Fraction(str(x)) for x in item))
    except NotBalanced as exc:
        raise SpecParseError("%s: %s" % (where, exc)) from exc
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecParseError("%s: %s" % (where, exc)) from exc
    raise SpecParseError("%s: expected an integer or six integers" % where)


def spec_from_obj(obj) -> JigsawSpec:
    if not isinstance(obj, dict) or "tiles" not in obj:
        raise SpecParseError("spec must be an object with a 'tiles' list")
    raw_tiles = obj["tiles"]
    if not isinstance(raw_tiles, list) or not raw_tiles:
        raise SpecParseError("'tiles' must be a non-empty list")
    parsed = [_parse_tile(t, "tile %d" % i) for i, t in enumerate(raw_tiles)]
    tiles = [t for t, _ in parsed]
    offsets = [r for _, r in parsed]
    gluings = []
    for n, g in enumerate(obj.get("gluings", [])):
        if not (isinstance(g, list) and len(g) == 4 and all(isinstance(x, int) and not isinstance(x, bool) for x in g)):
            raise SpecParseError("gluing %d must be four integers" % n)
        a, sa, b, sb = g
        if not (0 <= a < len(tiles) and 0 <= b < len(tiles)):
            raise SpecParseError("gluing %d refers to a missing tile" % n)
        if sa not in (1, 2, 3) or sb not in (1, 2, 3):
            raise SpecParseError("gluing %d: sides are numbered 1 to 3" % n)
        gluings.append((a, side_after(sa, -offsets[a]), b, side_after(sb, -offsets[b])))
    return JigsawSpec(tuple(tiles), tuple(gluings))


def parse_spec(text: str) -> JigsawSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError("invalid JSON: %s" % exc) from exc
    return spec_from_obj(obj)


def load_spec(path) -> JigsawSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecParseError("cannot read %s: %s" % (path, exc)) from exc
    return parse_spec(text)


def spec_to_obj(spec: JigsawSpec) -> dict:
    if all(t.integral_n is not None for t in spec.tiles):
        tiles = [t.integral_n for t in spec.tiles]
    else:
        tiles = [[x for k in t.labels for x in (k.numerator, k.denominator)] for t in spec.tiles]
    return {"tiles": tiles, "gluings": [list(g) for g in spec.gluings]}


def dump_spec(spec: JigsawSpec) -> str:
    return json.dumps(spec_to_obj(spec))


# ---------------------------------------------------------------- reports


def q(x) -> str:
    """A rational as a ``"num/den"`` string (integers without denominator)."""
    if isinstance(x, ExtendedRational):
        return str(x)
    return fmt_label(Fraction(x))


def element_json(g: GroupElement):
    return g.to_json()


def interval_json(iv):
    return {
        "center": q(iv.center),
        "radius": q(iv.radius),
        "interval": [q(iv.left), q(iv.right)],
        "contraction": iv.contraction,
        "witness": element_json(iv.witness),
    }


def verdict_json(v):
    out = {"point": q(v.point), "verdict": v.kind, "steps": len(v.steps)}
    if v.kind == "cusp":
        out["word"] = list(v.word)
    elif v.kind == "special":
        out["witness"] = element_json(v.witness)
        out["fixed_points"] = [q(p) for p in v.witness.fixed_points()]
    else:
        out["budget"] = v.budget
    return out


def report_to_obj(report, spec=None) -> dict:
    from .arith import Arithmetic  # local import keeps module import order simple

    out = {
        "verdict": report.verdict,
        "L": q(report.L),
        "signature": list(report.signature),
        "tiles": [t.key() for t in report.tile_set],
        "boundary_labels": [q(k) for k in report.boundary_labels],
        "family": report.family,
    }
    if spec is not None:
        out["spec"] = spec_to_obj(spec)
    a = report.arithmetic
    if a is None:
        out["arithmeticity"] = None
    elif isinstance(a, Arithmetic):
        out["arithmeticity"] = {"result": "arithmetic",
                                "trace_squares": [[d, q(t)] for d, t in a.traces]}
    else:
        out["arithmeticity"] = {"result": "non-arithmetic", "element": a.description,
                                "witness": element_json(a.witness), "trace_square": q(a.trace2)}
    c = report.cover
    if c is not None:
        out["cover"] = {
            "window": [q(c.start), q(c.start + c.L)],
            "status": c.status,
            "intervals": [interval_json(iv) for iv in c.intervals],
            "uncovered": [q(p) for p in c.uncovered],
            "gaps": [[q(a), q(b)] for a, b in c.gaps],
        }
    out["points"] = [verdict_json(v) for v in report.points]
    out["specials"] = [verdict_json(v) for v in report.specials]
    out["tangency"] = report.tangency.to_json() if report.tangency is not None else None
    out["special_cycles"] = report.cycles
    out["notes"] = list(report.notes)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
