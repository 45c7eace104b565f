"""Threshold profiles N·p/(p-1) < ℓ over N prime to p, and localization."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

from kummerlab.annuli import Annulus, kummer_pullback
from kummerlab.errors import InputError, NonMonotoneProfile
from kummerlab.lengthlab.detectors import detect_gt_c
from kummerlab.valnum import POS_INF, LogMag, Thresholds, as_fraction


@dataclass(frozen=True)
class ThresholdProfile:
    p: int
    c: Fraction
    n_max: int
    passed: Tuple[Tuple[int, bool], ...]

    def as_dict(self) -> Dict[int, bool]:
        return dict(self.passed)

    @property
    def saturated(self) -> bool:
        """Every threshold up to n_max passed"""
        return all(value for _, value in self.passed)

    def first_difference(self, other: "ThresholdProfile") -> Optional[int]:
        """Smallest N on which the two profiles disagree"""
        theirs = other.as_dict()
        for n, value in self.passed:
            if theirs.get(n) != value:
                return n
        return None


@dataclass(frozen=True)
class Localization:
    """ℓ ∈ (lo, hi]; hi is +inf when every threshold up to n_max passed"""

    lo: Fraction
    hi: LogMag
    saturated: bool

    def contains(self, length: LogMag) -> bool:
        if length == POS_INF:
            return self.hi == POS_INF
        return self.lo < length <= self.hi

    def width(self) -> LogMag:
        return self.hi - self.lo


def _check_n_max(n_max: int) -> None:
    if isinstance(n_max, bool) or not isinstance(n_max, int) or n_max < 1:
        raise InputError(f"n_max must be a positive integer, got {n_max!r}")


def prime_to_p(p: int, n_max: int):
    return [n for n in range(1, n_max + 1) if n % p]


def as_length(length) -> LogMag:
    if length == POS_INF:
        return POS_INF
    length = as_fraction(length)
    if length <= 0:
        raise InputError(f"Annulus length must be positive, got {length}")
    return length


@lru_cache(maxsize=4096)
def profile_direct(length, p: int, n_max: int) -> ThresholdProfile:
    """N·c < ℓ for every N ≤ n_max prime to p"""
    _check_n_max(n_max)
    c = Thresholds.for_prime(p).c
    length = as_length(length)
    return ThresholdProfile(
        p, c, n_max, tuple((n, n * c < length) for n in prime_to_p(p, n_max))
    )


def profile_from_torsors(
    annulus: Annulus, p: int, n_max: int, cross_check: bool = True
) -> ThresholdProfile:
    """The same profile read off μ_p classes on the μ_N Kummer pullbacks

    With cross_check every converse witness on every pullback must split
    across the common zone and lie in H¹_ω.

    Raises:
        InconsistentVerdict: If a witness fails on some pullback
    """
    _check_n_max(n_max)
    c = Thresholds.for_prime(p).c
    passed = []
    for n in prime_to_p(p, n_max):
        pullback, _ = kummer_pullback(annulus, n)
        passed.append((n, detect_gt_c(pullback, p, cross_check=cross_check)))
    return ThresholdProfile(p, c, n_max, tuple(passed))


def localize(profile: ThresholdProfile) -> Localization:
    """Half-open interval (c·N_pass, c·N_fail] that must contain ℓ

    Raises:
        NonMonotoneProfile: If some N passes after a smaller N failed
    """
    last_passed = 0
    first_failed = None
    for n, value in profile.passed:
        if value:
            if first_failed is not None:
                raise NonMonotoneProfile(f"N={n} passes after N={first_failed} failed")
            last_passed = n
        elif first_failed is None:
            first_failed = n
    lo = profile.c * last_passed
    if first_failed is None:
        return Localization(lo, POS_INF, True)
    return Localization(lo, profile.c * first_failed, False)
