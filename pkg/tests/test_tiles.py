from fractions import Fraction

import pytest

from hypjigsaw.errors import NotBalanced
from hypjigsaw.exact import IDENTITY, compose, normalize
from hypjigsaw.tiles import (
    canonical_rotation,
    delta,
    fixes_upper_point,
    side_after,
    sides_match,
    std_involutions,
    std_marked_points,
    tile_new,
)

F = Fraction


def test_tile_new_examples():
    assert tile_new(1, 1, 1) == delta(1)
    assert tile_new(3, 1, F(1, 3)) == delta(3)
    assert delta(3).labels == (1, F(1, 3), 3)
    with pytest.raises(NotBalanced):
        tile_new(1, 2, 3)
    with pytest.raises(ValueError):
        tile_new(-1, -1, 1)


def test_canonical_rotation_side_map():
    tile, r = canonical_rotation(3, 1, F(1, 3))
    # written side i lands on canonical side side_after(i, -r)
    for i, k in enumerate((3, 1, F(1, 3)), start=1):
        assert tile.label(side_after(i, -r)) == k


def test_marked_points_examples():
    assert std_marked_points(delta(1))[2] == (0, 1)
    assert std_marked_points(delta(2))[2] == (0, 2)
    assert std_marked_points(delta(3))[1] == (F(-3, 4), F(3, 16))


def test_involution_examples():
    assert std_involutions(delta(1))[1] == normalize([[1, 1], [-2, -1]], 1)
    assert std_involutions(delta(3))[1] == normalize([[3, 3], [-4, -3]], 3)
    assert std_involutions(delta(2))[2] == normalize([[0, 2], [-1, 0]], 2)


@pytest.mark.parametrize("ks", [(1, 1, 1), (1, F(1, 2), 2), (1, F(1, 3), 3),
                                (2, F(3, 4), F(2, 3)), (F(1, 5), 5, 1)])
def test_involutions_fix_their_marked_points(ks):
    t = tile_new(*ks)
    for g, (x, h2) in zip(std_involutions(t), std_marked_points(t)):
        assert fixes_upper_point(g, x, h2)
        assert compose(g, g) == IDENTITY
        assert g.trace == 0


def test_sides_match_examples():
    d1, d2, d3 = delta(1), delta(2), delta(3)
    assert sides_match(d2, 3, d2, 3)  # both labelled 2
    assert all(sides_match(d1, i, d3, 1) for i in (1, 2, 3))
    assert not sides_match(d3, 3, d3, 2)  # 3 against 1/3


def test_vertex_width_and_types():
    d3 = delta(3)
    assert [d3.vertex_width(v) for v in (1, 2, 3)] == [1, 1, 3]
    assert [d3.side_type(s) for s in (1, 2, 3)] == [1, 3, 3]
    assert delta(1).is_symmetric and not d3.is_symmetric
    assert d3.integral_n == 3 and tile_new(2, F(3, 4), F(2, 3)).integral_n is None
