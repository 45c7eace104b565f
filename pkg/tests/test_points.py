from fractions import Fraction

import pytest

from kummerlab.errors import InputError, InvalidPoint
from kummerlab.points import (
    TrunkPoint,
    fiber_count,
    fiber_count_recursive,
    fiber_tree,
    power_fiber_count,
    push_p,
)

FIGURE_RADII = ["-1", "-3/2", "-2", "-5/2", "-3"]


def test_fiber_tree_for_cube_of_cube():
    rows = fiber_tree(3, 2, 0, FIGURE_RADII)
    assert [row.radius for row in rows] == [Fraction(r) for r in FIGURE_RADII]
    assert [row.count for row in rows] == [1, 1, 3, 3, 9]


def test_fiber_tree_sorts_descending_and_deduplicates():
    rows = fiber_tree(3, 2, 0, ["-3", "-1", "-1"])
    assert [row.radius for row in rows] == [-1, -3]


def test_fiber_tree_separations():
    row = fiber_tree(3, 2, 0, ["-3"])[0]
    assert [s.level for s in row.separations] == [1, 2]
    assert all(s.distinguished for s in row.separations)
    assert row.separations[0].separation == Fraction(-1, 2)


@pytest.mark.parametrize(
    "p, h, m, r, count",
    [
        (3, 2, 0, -2, 3),
        (3, 1, 0, Fraction(-3, 2), 1),
        (2, 3, 0, -10, 8),
        (2, 1, 0, Fraction(-5, 2), 2),
        (5, 2, 1, Fraction(-1, 2), 5),
    ],
)
def test_fiber_count(p, h, m, r, count):
    assert fiber_count(p, h, m, r) == count


def _grid(m, h):
    m = Fraction(m)
    r = m - h - 2
    while r < m:
        yield r
        r += Fraction(1, 4)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("m", [0, -1, Fraction(3, 2)])
def test_closed_form_matches_tower(p, m):
    for h in range(1, 5):
        for r in _grid(m, h):
            assert fiber_count(p, h, m, r) == fiber_count_recursive(p, h, m, r), (p, h, m, r)


def test_fiber_count_rejects_points_above_center():
    with pytest.raises(InvalidPoint):
        fiber_count(3, 1, 0, 0)
    with pytest.raises(InputError):
        fiber_count(3, 0, 0, -1)


def test_power_fiber_count():
    assert power_fiber_count(3, 2, 0, 0, -3) == fiber_count(3, 2, 0, -3)
    assert power_fiber_count(3, 2, 1, 0, -3) == 9
    assert power_fiber_count(3, 2, 1, 0, -1) == 3
    assert power_fiber_count(3, 2, 2, 0, -1) == 9
    with pytest.raises(InputError):
        power_fiber_count(3, 2, 3, 0, -1)


class TestPush:
    def test_below_root_separation(self):
        image = push_p(TrunkPoint(0, -2), 3)
        assert (image.center_mag, image.radius) == (0, -3)
        assert image.center_tag == "z0^3"

    def test_above_root_separation(self):
        image = push_p(TrunkPoint(1, Fraction(3, 4)), 3)
        assert (image.center_mag, image.radius) == (3, Fraction(9, 4))

    def test_point_on_segment_to_zero_is_rejected(self):
        with pytest.raises(InvalidPoint):
            push_p(TrunkPoint(0, 0), 3)
        with pytest.raises(InvalidPoint):
            TrunkPoint(0, 1)
