"""Points η_{z0,r} of the analytic line and fibers of z ↦ z^{p^h}.

A point is recorded by log_p|z0| and log_p r; the center itself is only a
tag. Fiber counts depend on nothing else: conjugate preimages are told apart
by the distance between roots of unity.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from kummerlab.errors import InputError, InvalidPoint
from kummerlab.valnum import Thresholds, as_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrunkPoint:
    """The point η_{z0,r} with r ≤ |z0|"""

    center_mag: Fraction
    radius: Fraction
    center_tag: str = "z0"

    def __post_init__(self):
        object.__setattr__(self, "center_mag", as_fraction(self.center_mag))
        object.__setattr__(self, "radius", as_fraction(self.radius))
        if self.radius > self.center_mag:
            raise InvalidPoint(
                f"Radius {self.radius} exceeds center magnitude {self.center_mag}"
            )


@dataclass(frozen=True)
class Separation:
    """Distance between conjugate preimage centers at one level of the tower"""

    level: int
    center_mag: Fraction
    separation: Fraction
    distinguished: bool


@dataclass(frozen=True)
class FiberRow:
    radius: Fraction
    count: int
    separations: Tuple[Separation, ...]


def _check_height(h: int) -> None:
    if isinstance(h, bool) or not isinstance(h, int) or h < 1:
        raise InputError(f"Tower height must be a positive integer, got {h!r}")


def _check_below(m: Fraction, r: Fraction) -> None:
    if r >= m:
        raise InvalidPoint(f"Radius {r} must lie strictly below center magnitude {m}")


def push_p(pt: TrunkPoint, p: int) -> TrunkPoint:
    """Image of η_{z0,r} under z ↦ z^p

    Raises:
        InvalidPoint: If the point lies on the segment [0, ∞]
    """
    th = Thresholds.for_prime(p)
    _check_below(pt.center_mag, pt.radius)
    if pt.radius <= pt.center_mag + th.tau1:
        radius = pt.radius - 1 + (p - 1) * pt.center_mag
    else:
        radius = p * pt.radius
    return TrunkPoint(p * pt.center_mag, radius, f"{pt.center_tag}^{p}")


def fiber_count(p: int, h: int, m, r) -> int:
    """Number of preimages of η_{z0,r} under z ↦ z^{p^h}, with |z0| = p^m

    Raises:
        InvalidPoint: If r ≥ m
    """
    th = Thresholds.for_prime(p)
    _check_height(h)
    m, r = as_fraction(m), as_fraction(r)
    _check_below(m, r)
    if r >= m + th.tau:
        return 1
    # zone i is [m - i + tau, m - i + tau1); the last zone is unbounded below
    depth = max(1, math.ceil(m + th.tau - r))
    return p ** min(depth, h)


def power_fiber_count(p: int, h: int, j: int, m, r) -> int:
    """Fiber cardinality of the μ_{p^h} torsor S^{p^h} = T^{p^j·u}, u prime to p

    The torsor is p^j copies of the μ_{p^(h-j)} torsor of T^u.
    """
    _check_height(h)
    if isinstance(j, bool) or not isinstance(j, int) or not 0 <= j <= h:
        raise InputError(f"Expected 0 ≤ j ≤ {h}, got {j!r}")
    if j == h:
        _check_below(as_fraction(m), as_fraction(r))
        return p**h
    return p**j * fiber_count(p, h - j, m, r)


def _levels(p: int, h: int, m: Fraction, r: Fraction) -> List[Separation]:
    """Walk the tower downwards, one z ↦ z^p at a time"""
    th = Thresholds.for_prime(p)
    separations = []
    for level in range(1, h + 1):
        distinguished = r < m + th.tau
        upper_mag = m / p
        separations.append(
            Separation(level, upper_mag, upper_mag + th.tau1, distinguished)
        )
        if distinguished:
            r = r + 1 - (p - 1) * upper_mag
        else:
            r = r / p
        m = upper_mag
    return separations


def fiber_count_recursive(p: int, h: int, m, r) -> int:
    """Fiber count by inverting push_p level by level

    Raises:
        InvalidPoint: If r ≥ m
    """
    _check_height(h)
    m, r = as_fraction(m), as_fraction(r)
    _check_below(m, r)
    count = 1
    for separation in _levels(p, h, m, r):
        if separation.distinguished:
            count *= p
    return count


def fiber_tree(p: int, h: int, m, radii: Sequence) -> List[FiberRow]:
    """Fiber counts and level-wise separations, radius descending

    Raises:
        InvalidPoint: If some radius is not below m
    """
    _check_height(h)
    m = as_fraction(m)
    rows = []
    for r in sorted({as_fraction(r) for r in radii}, reverse=True):
        _check_below(m, r)
        rows.append(FiberRow(r, fiber_count(p, h, m, r), tuple(_levels(p, h, m, r))))
    logger.debug("fiber tree p=%s h=%s m=%s: %d rows", p, h, m, len(rows))
    return rows
