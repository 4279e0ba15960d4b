from fractions import Fraction

import pytest

from hypjigsaw.errors import DeterminantMismatch, IdentityElement, ZeroMatrix
from hypjigsaw.exact import (
    IDENTITY,
    INF,
    T,
    ExtendedRational,
    GroupElement,
    apply,
    apply_word,
    compose,
    evaluate_word,
    inverse,
    normalize,
    parse_point,
    rational_fixed_points,
    reduce_word,
    trace_squared,
    translation,
    word_concat,
    word_inverse,
)
from hypjigsaw.tiles import delta, std_involutions, tile_new

B = normalize([[7, -6], [-2, 3]], 9)


def mat(g):
    return [[g.m11, g.m12], [g.m21, g.m22]], g.d


def test_normalize_examples():
    assert mat(normalize([[2, 0], [0, 2]], 4)) == ([[1, 0], [0, 1]], 1)
    assert mat(normalize([[0, 3], [-1, 0]], 3)) == ([[0, 3], [-1, 0]], 3)
    assert mat(normalize([[-1, 0], [0, -1]], 1)) == ([[1, 0], [0, 1]], 1)


def test_normalize_rejects_bad_input():
    with pytest.raises(ZeroMatrix):
        normalize([[0, 0], [0, 0]], 1)
    with pytest.raises(DeterminantMismatch):
        normalize([[1, 0], [0, 2]], 1)  # 1/2 is not a square
    with pytest.raises(DeterminantMismatch):
        normalize([[0, 1], [1, 0]], 1)  # orientation reversing
    with pytest.raises(ValueError):
        GroupElement(2, 0, 0, 2, 4)


def test_compose_examples():
    i1, i2, i3 = std_involutions(tile_new(1, Fraction(1, 3), 3))
    assert compose(compose(compose(i1, i2), i1), i3) == B
    assert mat(compose(T, T)) == ([[1, 2], [0, 1]], 1)
    j1, _, j3 = std_involutions(delta(1))
    # [[-2, 1], [1, -1]] with the sign flipped to make the leading entry positive
    assert mat(compose(j1, j3)) == ([[2, -1], [-1, 1]], 1)


def test_inverse_examples():
    assert inverse(IDENTITY) == IDENTITY
    j3 = std_involutions(delta(1))[2]
    assert inverse(j3) == j3
    assert mat(inverse(T)) == ([[1, -1], [0, 1]], 1)


def test_apply_examples():
    assert apply(T, INF) == INF
    assert apply(B, 1) == ExtendedRational(1, 1)
    j3 = std_involutions(delta(1))[2]
    assert apply(j3, Fraction(5, 7)) == ExtendedRational(-7, 5)
    assert apply(j3, 0) == INF
    assert apply(j3, INF) == ExtendedRational(0, 1)


def test_trace_squared_examples():
    assert trace_squared(IDENTITY) == 4
    assert trace_squared(B) == Fraction(100, 9)


def test_fixed_points_examples():
    assert rational_fixed_points(B) == (ExtendedRational(-3, 1), ExtendedRational(1, 1))
    conj = normalize([[-3, 24], [-2, 13]], 9)
    assert rational_fixed_points(conj) == (ExtendedRational(2, 1), ExtendedRational(6, 1))
    assert rational_fixed_points(T) == (INF,)
    assert rational_fixed_points(std_involutions(delta(1))[2]) == ()  # elliptic
    with pytest.raises(IdentityElement):
        rational_fixed_points(IDENTITY)


def test_kinds():
    assert IDENTITY.kind() == "identity"
    assert T.kind() == "parabolic"
    assert B.kind() == "hyperbolic"
    assert std_involutions(delta(3))[1].kind() == "elliptic"


def test_str_uses_rational_scalar_for_square_determinant():
    assert str(B) == "(1/3)[[7, -6], [-2, 3]]"
    assert str(std_involutions(delta(2))[2]) == "(1/sqrt(2))[[0, 2], [-1, 0]]"
    assert str(T) == "[[1, 1], [0, 1]]"


def test_json_round_trip():
    for g in (B, T, std_involutions(delta(3))[1]):
        assert GroupElement.from_json(g.to_json()) == g


def test_extended_rational_basics():
    assert parse_point("inf") == INF
    assert parse_point("-6/4") == ExtendedRational(-3, 2)
    assert ExtendedRational.of(Fraction(4, 6)) == ExtendedRational(2, 3)
    assert ExtendedRational(-3, 1) < ExtendedRational(1, 1) < INF
    assert str(ExtendedRational(-7, 5)) == "-7/5"
    with pytest.raises(ValueError):
        ExtendedRational(2, 4)
    with pytest.raises(ValueError):
        parse_point("x/2")


def test_translation_by_rational():
    assert apply(translation(Fraction(5, 2)), Fraction(1, 2)) == ExtendedRational(3, 1)


def test_words():
    assert reduce_word((0, 1, 1, 2, 2, 0, 3)) == (3,)
    assert word_inverse((0, 1, 2)) == (2, 1, 0)
    assert word_concat((0, 1), (1, 2)) == (0, 2)
    gens = std_involutions(delta(3))
    w = (0, 1, 0, 2)
    assert evaluate_word(w, gens) == B
    for x in (Fraction(1, 2), 5, INF):
        assert apply_word(w, gens, x) == apply(B, x)
