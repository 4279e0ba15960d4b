"""Acceptance criteria 1-9, each reporting one PASS/FAIL line."""

import itertools
import os
import random
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from hypjigsaw.arith import (
    Arithmetic,
    Distinct,
    JABlocks,
    arithmeticity_check,
    commensurability_distinct,
    s13_block_decomposition,
    tangency_pattern,
)
from hypjigsaw.cuspset import (
    ARITHMETIC,
    COMPLETE,
    PSEUDOMODULAR,
    SPECIALS,
    Cusp,
    Special,
    classify_group,
    killer_interval,
    reduce_point,
)
from hypjigsaw.develop import cusp_strip, strip_rotation
from hypjigsaw.exact import (
    INF,
    ExtendedRational,
    apply,
    apply_word,
    compose,
    evaluate_word,
    inverse,
    normalize,
    product,
    trace_squared,
    translation,
)
from hypjigsaw.families import j_a, j_prime, j_prime_union, s12_chain, s13_chain, two_delta1, two_j_a
from hypjigsaw.jigsaw import assemble, census_specs, group, weierstrass
from hypjigsaw.tiles import delta

F = Fraction
ER = ExtendedRational
D1, D2, D3 = delta(1), delta(2), delta(3)


@pytest.fixture
def report(capsys):
    """Print one PASS/FAIL line for a criterion, then fail the test if needed."""
    def emit(n, ok, detail):
        with capsys.disabled():
            print("\nacceptance %d: %s  %s" % (n, "PASS" if ok else "FAIL", detail))
        assert ok, detail
    return emit


def test_criterion_1_weierstrass(report):
    g = weierstrass(1, F(1, 3), 3)
    r = classify_group(g, start=-2)
    c = r.cover
    b = normalize([[7, -6], [-2, 3]], 9)
    by_point = {v.point: v for v in r.points}
    checks = {
        "L": g.L == 5,
        "sides": sorted(cusp_strip(g, -2).feet) == [-2, -1, 0, 3],
        "intervals": [(iv.left, iv.right) for iv in c.intervals] == [(-3, -1), (-2, 0), (-1, 1), (1, 2), (2, 4)],
        "uncovered": set(c.uncovered) == {ER(1, 1), ER(2, 1)},
        "specials": r.verdict == SPECIALS and all(isinstance(v, Special) for v in r.points)
                    and set(by_point) == {ER(1, 1), ER(2, 1)},
        "witness": by_point.get(ER(1, 1)) is not None and by_point[ER(1, 1)].witness == b,
        "fixed": set(b.fixed_points()) == {ER(-3, 1), ER(1, 1)},
    }
    bad = [k for k, ok in checks.items() if not ok]
    report(1, not bad, "Γ(1,1/3,3): L=5, five killer intervals, specials 1 and 2" + (" failed: %s" % bad if bad else ""))


def test_criterion_2_group_relation(report):
    bad, count = [], 0
    for types in ([D1, D2], [D1, D3]):
        for key, spec in census_specs(types, 6):
            j = assemble(spec)
            g = group(j)
            count += 1
            if not (g.L == j.formula_length() and product(reversed(g.generators)) == translation(g.L)):
                bad.append(key)
    report(2, not bad, "ι_{N+1}...ι_0 = T^L on %d census jigsaws" % count)


def test_criterion_3_s12(report):
    rng = random.Random(20240612)
    specs = census_specs([D1, D2], 6)
    bad = []
    reductions = 0
    for key, spec in specs:
        g = group(assemble(spec))
        r = classify_group(g)
        ok = r.verdict == PSEUDOMODULAR and r.cover.status == COMPLETE and not isinstance(r.arithmetic, Arithmetic)
        for _ in range(200):
            qd = rng.randint(1, 1000)
            x = F(rng.randint(-10 * qd, 10 * qd), qd)
            v = reduce_point(g, r.cover, x, trace=False)
            reductions += 1
            if not (isinstance(v, Cusp) and apply_word(v.word, g.generators, x) == INF):
                ok = False
                break
        if not ok:
            bad.append(key)
    report(3, not bad and len(specs) == 588,
           "%d S(1,2) jigsaws pseudomodular, %d reductions verified" % (len(specs), reductions))


def label_one_sides_meet_delta1(spec):
    j = assemble(spec)
    for t, tile in enumerate(j.tiles):
        if tile.integral_n != 3:
            continue
        for side in (1, 2, 3):
            if tile.label(side) == 1:
                other = j.glued_to(t, side)
                if other is None or j.tiles[other[0]].integral_n != 1:
                    return False
    return True


def test_criterion_4_s13_trichotomy(report):
    checks = {}
    ga = group(assemble(j_a()))
    a = arithmeticity_check(ga)
    firsts = dict(a.traces) if isinstance(a, Arithmetic) else {}
    checks["J_A"] = (classify_group(ga).verdict == ARITHMETIC
                     and all(firsts.get("i0*i%d" % i, F(1, 2)).denominator == 1 for i in range(1, 6))
                     and all(trace_squared(compose(ga.generators[0], ga.generators[i])).denominator == 1
                             for i in range(1, 6)))
    checks["two J_A"] = classify_group(group(assemble(two_j_a()))).verdict == ARITHMETIC
    for name, spec in [("J'", j_prime())] + [("J'+J_%d" % n, j_prime_union(n)) for n in (1, 2, 3)]:
        r = classify_group(group(assemble(spec)))
        checks[name] = (r.verdict == SPECIALS and bool(r.specials)
                        and all(s.witness.kind() == "hyperbolic" for s in r.specials))
    considered = 0
    census_ok = True
    for key, spec in census_specs([D1, D3], 5):
        if not label_one_sides_meet_delta1(spec):
            continue
        considered += 1
        g = group(assemble(spec))
        r = classify_group(g)
        expected = ARITHMETIC if isinstance(s13_block_decomposition(g.jigsaw), JABlocks) else PSEUDOMODULAR
        if r.verdict != expected:
            census_ok = False
    checks["census"] = census_ok and considered > 0
    bad = [k for k, ok in checks.items() if not ok]
    report(4, not bad, "J_A, two J_A arithmetic; J', J'+J_1..3 specials; %d census jigsaws without specials%s"
           % (considered, " failed: %s" % bad if bad else ""))


PARITY = {
    (2, 1): lambda d: F((d * d + 3) ** 2, 2),
    (2, 2): lambda d: F((d * d + 4) ** 2, 4),
    (3, 1): lambda d: F((d * d + 4) ** 2, 3),
    (3, 3): lambda d: F((d * d + 6) ** 2, 9),
}


def test_criterion_5_parity_table(report):
    bad = []
    for (a, b), formula in PARITY.items():
        for mj, mk in itertools.product(range(-6, 7), repeat=2):
            if abs(mj - mk) > 12:
                continue
            t2 = trace_squared(compose(strip_rotation(mj, a), strip_rotation(mk, b)))
            if t2 != formula(mj - mk):
                bad.append((a, b, mj, mk))
        for d in range(-12, 13):
            if trace_squared(compose(strip_rotation(d, a), strip_rotation(0, b))) != formula(d):
                bad.append((a, b, d, 0))
    report(5, not bad, "trace² identities for type pairs (2,1),(2,2),(3,1),(3,3), |m_j-m_k| <= 12")


def test_criterion_6_killer_property(report):
    rng = random.Random(6)
    groups = [group(assemble(s)) for s in (s12_chain(2), s13_chain(2), j_prime(), two_delta1(), j_a())]
    groups.append(weierstrass(1, F(1, 3), 3))
    tested, bad = 0, []
    while tested < 500:
        g = rng.choice(groups)
        word = [rng.randrange(len(g.generators)) for _ in range(rng.randint(1, 8))]
        h = evaluate_word(word, g.generators)
        if h.m21 == 0:
            continue
        iv = killer_interval(h)
        q = rng.randint(1, 10 ** 6)
        lo = iv.left * q
        hi = iv.right * q
        first = lo.__floor__() + 1
        last = hi.__ceil__() - 1
        if first > last:
            continue
        x = F(rng.randint(first, last), q)
        if not iv.left < x < iv.right:
            continue
        y = apply(inverse(h), x)
        tested += 1
        if not (y.is_infinite or y.den < x.denominator):
            bad.append((h, x))
    report(6, not bad, "%d random killer contractions, %d exceptions" % (tested, len(bad)))


def test_criterion_7_tangency(report):
    checks = {}
    reps = []
    for r in range(1, 6):
        g = group(assemble(s12_chain(r)))
        checks["gaps r=%d" % r] = tangency_pattern(g).gaps == (2, 3 * r + 2)
        reps.append(classify_group(g))
    checks["S(1,2) distinct"] = all(isinstance(commensurability_distinct(a, b), Distinct)
                                    for a, b in itertools.combinations(reps, 2))
    jp = [classify_group(group(assemble(j_prime_union(n)))) for n in (1, 2, 3)]
    checks["J' distinct"] = all(isinstance(commensurability_distinct(a, b), Distinct)
                                for a, b in itertools.combinations(jp, 2))
    bad = [k for k, ok in checks.items() if not ok]
    report(7, not bad, "tangency gaps (2,3r+2) for r=1..5; both families pairwise distinct"
           + (" failed: %s" % bad if bad else ""))


def orbit_of_infinity(gens, length):
    seen = {INF}
    frontier = {INF}
    for _ in range(length):
        frontier = {apply(h, x) for x in frontier for h in gens} - seen
        seen |= frontier
    return seen


def test_criterion_8_orbit_oracle(report):
    g = group(assemble(two_delta1()))
    r = classify_group(g)
    cover = r.cover
    a, b = cover.start, cover.start + cover.L
    window = {F(p, q) for q in range(1, 21) for p in range(int(a * q), int(b * q) + 1) if a <= F(p, q) <= b}
    by_reduction = {x for x in window if isinstance(reduce_point(g, cover, x, trace=False), Cusp)}
    orbit = orbit_of_infinity(g.generators, 10)
    by_orbit = {x for x in window if ER.of(x) in orbit}
    report(8, by_reduction == by_orbit,
           "two-Δ1: %d cusps by reduction, %d by orbit enumeration (orbit inside reduction: %s)"
           % (len(by_reduction), len(by_orbit), by_orbit <= by_reduction))


def test_criterion_9_property_suites(report):
    here = Path(__file__).parent
    files = [str(here / "test_properties.py"), str(here / "test_census.py")]
    env = dict(os.environ)
    done = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *files],
                          capture_output=True, text=True, cwd=str(here.parent), env=env)
    tail = done.stdout.strip().splitlines()[-1] if done.stdout.strip() else done.stderr
    report(9, done.returncode == 0, "property suites standalone: %s" % tail)
