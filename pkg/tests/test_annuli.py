from fractions import Fraction

import pytest

from kummerlab.annuli import (
    Annulus,
    annulus_semigraph,
    distance,
    is_isomorphic,
    kummer_pullback,
    length,
    midpoint,
    skeleton_interval,
)
from kummerlab.cochains import harm_group
from kummerlab.errors import InputError, MidpointOfInfinite
from kummerlab.valnum import NEG_INF, POS_INF, LogInterval


def test_length_and_midpoint():
    annulus = Annulus.open(-3, 0)
    assert length(annulus) == 3
    assert midpoint(annulus) == Fraction(-3, 2)
    assert skeleton_interval(annulus) == LogInterval.open(-3, 0)
    assert length(Annulus(LogInterval(NEG_INF, 0))) == POS_INF
    with pytest.raises(MidpointOfInfinite):
        midpoint(Annulus(LogInterval(NEG_INF, 0)))


def test_annulus_validation():
    with pytest.raises(InputError):
        Annulus(LogInterval.empty())
    with pytest.raises(InputError):
        Annulus(LogInterval.open(0, 1), orientation=2)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (LogInterval.open(0, 2), LogInterval.open(5, 7), True),
        (LogInterval.open(0, 2), LogInterval.open(0, 3), False),
        (LogInterval(0, 2, True, False), LogInterval(-2, 0, False, True), True),
        (LogInterval(0, 2, True, False), LogInterval(5, 7, False, True), True),
        (LogInterval(0, 2, True, False), LogInterval.open(5, 7), False),
        (LogInterval(NEG_INF, 0), LogInterval(3, POS_INF), True),
        (LogInterval(NEG_INF, 0), LogInterval.whole(), False),
        (LogInterval.point(1), LogInterval.point(-4), True),
    ],
)
def test_is_isomorphic(a, b, expected):
    assert is_isomorphic(Annulus(a), Annulus(b)) is expected
    assert is_isomorphic(Annulus(b), Annulus(a)) is expected


def test_distance():
    assert distance("-1/2", 2) == Fraction(5, 2)


def test_kummer_pullback_divides_length():
    source, covering = kummer_pullback(Annulus.open(-6, 0), 3)
    assert source.interval == LogInterval.open(-2, 0)
    assert covering.degree == 3 and covering.target == Annulus.open(-6, 0)
    with pytest.raises(InputError):
        kummer_pullback(Annulus.open(-6, 0), 0)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_skeleton_of_annulus_carries_cyclic_harm(n):
    structure = harm_group(annulus_semigraph(Annulus.open(0, 1)), n)
    assert structure.invariant_factors == (n,)
    assert structure.order() == n
