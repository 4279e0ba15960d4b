"""Command-line front end: ``jigsaw classify|reduce|census|svg``.

Exit codes: 0 success, 1 unreadable input, 2 invalid jigsaw, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from collections import Counter
from fractions import Fraction

from .cuspset import INCONCLUSIVE, build_cover, classify_group, reduce_point
from .errors import InvalidJigsaw, NotBalanced, SpecParseError
from .exact import parse_point
from .jigsaw import JigsawSpec, assemble, census_specs, group, validate_set
from .render import render_svg
from .specio import dumps, load_spec, q, report_to_obj, spec_to_obj, verdict_json
from .tiles import delta, tile_new

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3
_NEGATIVE = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


class _Fail(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def _rational(text) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise _Fail(EXIT_PARSE, "not a rational number: %r" % text)


def _load(args):
    """Spec and assembled group from a file or the --weierstrass flag."""
    if args.weierstrass:
        try:
            ks = [_rational(k) for k in args.weierstrass]
            spec = JigsawSpec((tile_new(*ks),), ())
        except (NotBalanced, ValueError) as exc:
            raise _Fail(EXIT_PARSE, "bad tile: %s" % exc)
    elif args.spec:
        try:
            spec = load_spec(args.spec)
        except SpecParseError as exc:
            raise _Fail(EXIT_PARSE, str(exc))
    else:
        raise _Fail(EXIT_PARSE, "give a spec file or --weierstrass k1 k2 k3")
    try:
        return spec, group(assemble(spec))
    except InvalidJigsaw as exc:
        raise _Fail(EXIT_INVALID, "invalid jigsaw: %s" % exc)


def _summary(report) -> str:
    out = ["verdict: %s" % report.verdict,
           "L: %s" % q(report.L),
           "signature: %s over %s" % (list(report.signature), " ".join(str(t) for t in report.tile_set))]
    if report.cover is not None:
        c = report.cover
        out.append("cover of [%s, %s]: %s" % (q(c.start), q(c.start + c.L), c.status))
        for iv in c.intervals:
            out.append("  %s" % iv)
        if c.uncovered:
            out.append("uncovered: %s" % ", ".join(q(p) for p in c.uncovered))
    for v in report.points:
        line = "  %s -> %s" % (q(v.point), v.kind)
        if v.kind == "special":
            line += ", witness %s, fixed points %s" % (v.witness, ", ".join(q(p) for p in v.witness.fixed_points()))
        out.append(line)
    if report.tangency is not None:
        out.append("tangency pattern: %s" % report.tangency.to_json())
    out.extend("note: %s" % n for n in report.notes)
    return "\n".join(out)


def cmd_classify(args) -> int:
    spec, g = _load(args)
    t0 = time.perf_counter()
    report = classify_group(g, depth=args.depth, budget=args.budget, start=args.start)
    if args.json:
        obj = report_to_obj(report, spec)
        if args.timing:
            obj["timing_seconds"] = round(time.perf_counter() - t0, 6)
        print(dumps(obj))
    else:
        print(_summary(report))
    return EXIT_INCONCLUSIVE if report.verdict == INCONCLUSIVE else EXIT_OK


def cmd_reduce(args) -> int:
    spec, g = _load(args)
    try:
        x = parse_point(args.x)
    except ValueError as exc:
        raise _Fail(EXIT_PARSE, str(exc))
    cover = build_cover(g, args.depth, args.start)
    v = reduce_point(g, cover, x, args.budget)
    if args.json:
        obj = verdict_json(v)
        obj["trace"] = [{"kind": s.kind, "point": q(s.point), "denominator": s.denominator,
                         "interval": None if s.interval is None else [q(s.interval.left), q(s.interval.right)],
                         "matrix": None if s.matrix is None else s.matrix.to_json()} for s in v.steps]
        print(dumps(obj))
    else:
        for i, s in enumerate(v.steps, start=1):
            via = " in %s" % s.interval if s.interval is not None else ""
            mat = " by %s" % s.matrix if s.matrix is not None else ""
            print("%3d %-9s -> %s (denominator %d)%s%s" % (i, s.kind, q(s.point), s.denominator, via, mat))
        if v.kind == "cusp":
            print("cusp, word of length %d" % len(v.word))
        elif v.kind == "special":
            print("special, witness %s, fixed points %s"
                  % (v.witness, ", ".join(q(p) for p in v.witness.fixed_points())))
        else:
            print("unknown after %d steps" % v.budget)
    return EXIT_INCONCLUSIVE if v.kind == "unknown" else EXIT_OK


def parse_tile_set(text: str):
    m = re.fullmatch(r"\s*(?:S\()?\s*([0-9,\s]+?)\s*\)?\s*", text)
    if not m:
        raise _Fail(EXIT_PARSE, "tile set must look like 1,3 or S(1,3)")
    try:
        ns = sorted({int(x) for x in m.group(1).split(",") if x.strip()})
    except ValueError:
        raise _Fail(EXIT_PARSE, "tile set must list positive integers")
    if not ns or ns[0] < 1:
        raise _Fail(EXIT_PARSE, "tile set must list positive integers")
    return [delta(n) for n in ns]


def cmd_census(args) -> int:
    tiles = parse_tile_set(args.set)
    if not validate_set(tiles):
        raise _Fail(EXIT_INVALID, "not a jigsaw set: some tile has no matching side elsewhere")
    rows = []
    counts = Counter()
    for key, spec in census_specs(tiles, args.max_size):
        g = group(assemble(spec))
        r = classify_group(g, depth=args.depth, budget=args.budget)
        counts[r.verdict] += 1
        rows.append((key, spec, r))
    if args.json:
        print(dumps([report_to_obj(r, spec) | {"key": key} for key, spec, r in rows]))
    else:
        print("%4s %4s %-10s %5s %-14s %s" % ("#", "size", "signature", "L", "verdict", "spec"))
        for i, (key, spec, r) in enumerate(rows, start=1):
            print("%4d %4d %-10s %5s %-14s %s" % (i, spec.size, ",".join(map(str, r.signature)),
                                                  q(r.L), r.verdict, dumps_compact(spec)))
        print("total %d: %s" % (len(rows), ", ".join("%s %d" % kv for kv in sorted(counts.items()))))
    return EXIT_OK


def dumps_compact(spec) -> str:
    return json.dumps(spec_to_obj(spec), separators=(",", ":"))


def cmd_svg(args) -> int:
    spec, g = _load(args)
    window = None
    if args.window:
        window = (_rational(args.window[0]), _rational(args.window[1]))
    cover = build_cover(g, 0, args.start)
    text = render_svg(g, window, args.depth, cover)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jigsaw", description="Cusp sets of hyperbolic jigsaw groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("spec", nargs="?", help="jigsaw spec (JSON file); omit with --weierstrass")
        sp.add_argument("--weierstrass", nargs=3, metavar=("K1", "K2", "K3"),
                        help="use the single tile Δ(k1,k2,k3) instead of a spec file")
        sp.add_argument("--depth", type=int, default=2, help="extra developing levels")
        sp.add_argument("--budget", type=int, default=None, help="reduction step budget")
        sp.add_argument("--start", type=Fraction, default=None,
                        help="left end of the period window (a vertical-side foot)")
        sp.add_argument("--json", action="store_true", help="emit JSON")

    c = sub.add_parser("classify", help="classify a jigsaw group")
    common(c)
    c.add_argument("--timing", action="store_true", help="include wall-clock time in JSON output")
    c.set_defaults(func=cmd_classify)

    r = sub.add_parser("reduce", help="reduce a rational point towards ∞")
    r.add_argument("spec", nargs="?", help="jigsaw spec (JSON file); omit with --weierstrass")
    r.add_argument("x", help="rational point p/q (or inf)")
    r.add_argument("--weierstrass", nargs=3, metavar=("K1", "K2", "K3"))
    r.add_argument("--depth", type=int, default=2)
    r.add_argument("--budget", type=int, default=None)
    r.add_argument("--start", type=Fraction, default=None)
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_reduce)

    s = sub.add_parser("census", help="classify every jigsaw over a tile set")
    s.add_argument("set", help="integral tile set, e.g. 1,3 or S(1,3)")
    s.add_argument("max_size", type=int)
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_census)

    v = sub.add_parser("svg", help="draw the triangulation near ∞")
    common(v)
    v.add_argument("--window", nargs=2, metavar=("A", "B"))
    v.add_argument("-o", "--output", help="write to a file instead of stdout")
    v.set_defaults(func=cmd_svg)
    # let "-1/2" through as a positional value rather than an unknown option
    for sp in (p, c, r, s, v):
        sp._negative_number_matcher = _NEGATIVE
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print("error: %s" % exc, file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
