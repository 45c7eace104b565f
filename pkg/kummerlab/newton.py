"""Newton data of Laurent functions on annuli.

A Laurent function f = Σ a_i T^i is recorded by i ↦ c_i = log_p|a_i|. On the
skeleton point η_{0,p^λ} the seminorm is max_i (c_i + i·λ), a convex
piecewise-affine function of λ, so every question here reduces to comparing
finitely many affine forms on an interval.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Tuple

from kummerlab.errors import InputError, NotInvertible, ZeroDegree
from kummerlab.valnum import (
    NEG_INF,
    POS_INF,
    LogInterval,
    Thresholds,
    as_fraction,
    is_finite,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NewtonData:
    """Finite map degree -> coefficient log-magnitude, sorted by degree"""

    terms: Tuple[Tuple[int, Fraction], ...]

    def __post_init__(self):
        if not self.terms:
            raise InputError("Newton data needs at least one term")
        degrees = [degree for degree, _ in self.terms]
        if len(set(degrees)) != len(degrees):
            raise InputError(f"Repeated degrees in Newton data: {degrees}")
        for degree, value in self.terms:
            if isinstance(degree, bool) or not isinstance(degree, int):
                raise InputError(f"Degree must be an integer, got {degree!r}")
            if not isinstance(value, Fraction) or not is_finite(value):
                raise InputError(
                    f"Coefficient magnitude of degree {degree} must be a rational"
                )
        if degrees != sorted(degrees):
            object.__setattr__(self, "terms", tuple(sorted(self.terms)))

    @classmethod
    def from_mapping(cls, terms: Mapping[int, object]) -> "NewtonData":
        return cls(tuple(sorted((int(k), as_fraction(v)) for k, v in terms.items())))

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self.terms)

    def degrees(self) -> Tuple[int, ...]:
        return tuple(degree for degree, _ in self.terms)

    def __iter__(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)


def eval_at(nd: NewtonData, lam) -> Fraction:
    """log_p|f(η_{0,p^λ})| = max_i (c_i + i·λ)"""
    lam = as_fraction(lam)
    return max(value + degree * lam for degree, value in nd.terms)


def _positive_on(constant: Fraction, slope: int, interval: LogInterval) -> bool:
    """Whether constant + slope·λ > 0 for every λ in the interval"""
    if slope == 0:
        return constant > 0
    if interval.lo == NEG_INF:
        if slope > 0:
            return False
    else:
        at_lo = constant + slope * interval.lo
        if at_lo < 0 or (interval.lo_closed and at_lo == 0):
            return False
    if interval.hi == POS_INF:
        if slope < 0:
            return False
    else:
        at_hi = constant + slope * interval.hi
        if at_hi < 0 or (interval.hi_closed and at_hi == 0):
            return False
    return True


def dominant_degree(nd: NewtonData, interval: LogInterval) -> Optional[int]:
    """The degree whose term strictly dominates all others on the interval

    Args:
        nd: Newton data of the function
        interval: Non-empty log-radius interval

    Returns:
        The strictly dominant degree, or None if no term dominates

    Raises:
        InputError: If the interval is empty
    """
    if interval.is_empty():
        raise InputError("Dominance is undefined on the empty interval")
    for degree, value in nd.terms:
        if all(
            _positive_on(value - other_value, degree - other_degree, interval)
            for other_degree, other_value in nd.terms
            if other_degree != degree
        ):
            return degree
    return None


def is_invertible(nd: NewtonData, interval: LogInterval) -> bool:
    return dominant_degree(nd, interval) is not None


def is_coordinate(nd: NewtonData, interval: LogInterval) -> bool:
    return dominant_degree(nd, interval) in (-1, 1)


def degree_class(nd: NewtonData, interval: LogInterval) -> int:
    """Image of the function in the group of degree classes, which is Z

    Raises:
        NotInvertible: If no monomial strictly dominates
    """
    degree = dominant_degree(nd, interval)
    if degree is None:
        raise NotInvertible(f"No strictly dominant monomial on {interval}")
    return degree


def normalize(
    nd: NewtonData, interval: LogInterval
) -> Tuple[int, Fraction, Optional[NewtonData]]:
    """Write f = a_{i0} T^{i0} (1 + u) with |u| < 1 on the interval

    Returns:
        Tuple of (i0, c0, u); u is None when f is a monomial

    Raises:
        NotInvertible: If no monomial strictly dominates
    """
    i0 = degree_class(nd, interval)
    c0 = nd.as_dict()[i0]
    rest = tuple((degree - i0, value - c0) for degree, value in nd.terms if degree != i0)
    return i0, c0, NewtonData(rest) if rest else None


def recombine(i0: int, c0: Fraction, u: Optional[NewtonData]) -> NewtonData:
    """Inverse of normalize on the level of Newton data"""
    terms = [(i0, c0)]
    if u is not None:
        terms.extend((degree + i0, value + c0) for degree, value in u.terms)
    return NewtonData(tuple(sorted(terms)))


def split_locus(u: NewtonData, interval: LogInterval, p: int) -> LogInterval:
    """Skeleton points where 1 + u is guaranteed to be a p-th power

    The guaranteed region is {λ : max_j (c_j + j·λ) < tau}; each term gives
    one half-line, so the locus is an interval.
    """
    tau = Thresholds.for_prime(p).tau
    lo, lo_closed = interval.lo, interval.lo_closed
    hi, hi_closed = interval.hi, interval.hi_closed
    for degree, value in u.terms:
        if degree == 0:
            if value >= tau:
                return LogInterval.empty()
            continue
        bound = (tau - value) / degree
        if degree > 0:
            if bound < hi or (bound == hi and hi_closed):
                hi, hi_closed = bound, False
        elif bound > lo or (bound == lo and lo_closed):
            lo, lo_closed = bound, False
    locus = LogInterval.make(lo, hi, lo_closed, hi_closed)
    logger.debug("split locus of %s on %s: %s", u.terms, interval, locus)
    return locus


def image_interval(nd: NewtonData, interval: LogInterval) -> Tuple[LogInterval, int]:
    """Image of the skeleton under f and the degree of f as a finite map

    Raises:
        NotInvertible: If no monomial strictly dominates
        ZeroDegree: If the dominant degree is 0
    """
    i0, c0, _ = normalize(nd, interval)
    if i0 == 0:
        raise ZeroDegree("A function of dominant degree 0 is not a finite map")
    return interval.scale(i0).translate(c0), abs(i0)
