"""Analytic annuli C_I recorded by their log-radius interval I."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from kummerlab.cochains import Edge, SemiGraph
from kummerlab.errors import InputError
from kummerlab.valnum import LogInterval, LogMag, as_fraction, is_finite


@dataclass(frozen=True)
class Annulus:
    """The annulus {|T| ∈ I} with an orientation of its skeleton"""

    interval: LogInterval
    orientation: int = 1

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise InputError(f"Orientation must be +1 or -1, got {self.orientation!r}")
        if self.interval.is_empty():
            raise InputError("An annulus needs a non-empty interval")

    @classmethod
    def open(cls, lo, hi, orientation: int = 1) -> "Annulus":
        return cls(LogInterval.open(lo, hi), orientation)


@dataclass(frozen=True)
class KummerMap:
    """The covering T ↦ T^n from the pulled-back annulus onto the original"""

    degree: int
    source: Annulus
    target: Annulus


def length(annulus: Annulus) -> LogMag:
    return annulus.interval.length()


def _same_shape(a: LogInterval, b: LogInterval) -> bool:
    if (a.lo_closed, a.hi_closed) != (b.lo_closed, b.hi_closed):
        return False
    if (is_finite(a.lo), is_finite(a.hi)) != (is_finite(b.lo), is_finite(b.hi)):
        return False
    if is_finite(a.lo):
        return a.translate(b.lo - a.lo) == b
    if is_finite(a.hi):
        return a.translate(b.hi - a.hi) == b
    return True


def is_isomorphic(a: Annulus, b: Annulus) -> bool:
    """Whether B's interval is a rational translate of A's or of its reflection"""
    return _same_shape(a.interval, b.interval) or _same_shape(
        a.interval.reflect(), b.interval
    )


def skeleton_interval(annulus: Annulus) -> LogInterval:
    return annulus.interval


def midpoint(annulus: Annulus) -> Fraction:
    return annulus.interval.midpoint()


def distance(lam1, lam2) -> Fraction:
    return abs(as_fraction(lam1) - as_fraction(lam2))


def kummer_pullback(annulus: Annulus, n: int) -> Tuple[Annulus, KummerMap]:
    """The annulus covering C_I through T ↦ T^n, of length ℓ/n"""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"Kummer degree must be a positive integer, got {n!r}")
    source = Annulus(annulus.interval.scale(Fraction(1, n)), annulus.orientation)
    return source, KummerMap(n, source, annulus)


def annulus_semigraph(annulus: Annulus) -> SemiGraph:
    """Skeleton of an annulus: one edge whose two branches are open"""
    return SemiGraph(vertices=(), edges=(Edge(f"C{annulus.interval}", None, None),))
