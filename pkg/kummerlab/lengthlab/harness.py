"""Pair comparisons of annulus lengths through their threshold profiles.

Two annuli with identical profiles over all N ≤ n_max share one
localization interval, so their lengths differ by less than 2p/(p-1). The
narrower bound p/(p-1) for lengths far from pN^× is checked directly and
reported as a finding when it fails.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from kummerlab.annuli import Annulus
from kummerlab.errors import InputError
from kummerlab.lengthlab.profiles import (
    as_length,
    localize,
    profile_direct,
    profile_from_torsors,
)
from kummerlab.valnum import POS_INF, LogMag, Thresholds, as_fraction, is_finite

logger = logging.getLogger(__name__)


def distance_to_p_multiples(length, p: int) -> LogMag:
    """min over N ≥ 1 of |ℓ - pN|"""
    Thresholds.for_prime(p)
    length = as_length(length)
    if not is_finite(length):
        return POS_INF
    nearest = max(1, math.floor(length / p))
    return min(abs(length - p * n) for n in (nearest, nearest + 1))


@dataclass(frozen=True)
class PairReport:
    length1: LogMag
    length2: LogMag
    p: int
    n_max: int
    equal_profiles: bool
    first_difference: Optional[int]
    finite_agreement: Optional[bool]
    delta: Optional[LogMag]
    bound_holds: Optional[bool]
    distance1: LogMag
    distance2: LogMag
    narrow_gap_holds: Optional[bool]
    finding: Optional[str] = None


def pair_report(length1, length2, p: int, n_max: int) -> PairReport:
    """Compare two lengths the way isomorphic tempered groups would see them"""
    c = Thresholds.for_prime(p).c
    length1, length2 = as_length(length1), as_length(length2)
    profile1 = profile_direct(length1, p, n_max)
    profile2 = profile_direct(length2, p, n_max)
    difference = profile1.first_difference(profile2)
    equal = difference is None
    d1 = distance_to_p_multiples(length1, p)
    d2 = distance_to_p_multiples(length2, p)
    finite_agreement = delta = bound = narrow = finding = None
    if equal:
        finite_agreement = is_finite(length1) == is_finite(length2)
        if profile1.saturated and (is_finite(length1) or is_finite(length2)):
            undecided = "length gap" if finite_agreement else "finiteness"
            finding = f"profiles saturate at n_max={n_max}: {undecided} undecided"
        elif is_finite(length1):
            delta = abs(length1 - length2)
            bound = delta < 2 * c
            if d1 > 1 and d2 > 1:
                narrow = delta < c
                if not narrow:
                    finding = (
                        f"narrow gap fails: |{length1} - {length2}| = {delta} ≥ {c} "
                        f"with distances {d1}, {d2} to {p}N"
                    )
    if finding:
        logger.warning("p=%d: %s", p, finding)
    return PairReport(
        length1, length2, p, n_max, equal, difference, finite_agreement,
        delta, bound, d1, d2, narrow, finding,
    )


def length_grid(step, maximum) -> List[Fraction]:
    """step, 2·step, ..., up to and including maximum"""
    step, maximum = as_fraction(step), as_fraction(maximum)
    if step <= 0 or maximum < step:
        raise InputError(f"Invalid grid step {step} up to {maximum}")
    return [step * k for k in range(1, int(maximum / step) + 1)]


@dataclass
class SweepResult:
    rows: List[PairReport] = field(default_factory=list)
    findings: List[str] = field(default_factory=list)
    violations: int = 0
    torsor_mismatches: int = 0
    localization_failures: int = 0

    @property
    def ok(self) -> bool:
        return not (self.violations or self.torsor_mismatches or self.localization_failures)


def thm1_sweep(
    grid: Sequence, primes: Sequence[int], n_max: int, pairs: bool = True
) -> SweepResult:
    """Check the length bound over every pair of grid lengths

    Args:
        grid: Finite positive lengths
        primes: Primes to sweep
        n_max: Profile truncation
        pairs: Emit one report per pair; otherwise only per-length checks run

    Returns:
        Rows, findings and counts of hard violations
    """
    result = SweepResult()
    lengths: List[Fraction] = sorted({as_fraction(x) for x in grid})
    for p in primes:
        c = Thresholds.for_prime(p).c
        for length in lengths:
            direct = profile_direct(length, p, n_max)
            if profile_from_torsors(Annulus.open(-length, 0), p, n_max) != direct:
                result.torsor_mismatches += 1
                logger.warning("p=%d ℓ=%s: torsor profile differs", p, length)
            box = localize(direct)
            if not box.contains(length) or (not box.saturated and box.width() > 2 * c):
                result.localization_failures += 1
                logger.warning("p=%d ℓ=%s: localization %s fails", p, length, box)
        if not pairs:
            continue
        for i, first in enumerate(lengths):
            for second in lengths[i + 1:]:
                report = pair_report(first, second, p, n_max)
                result.rows.append(report)
                if report.bound_holds is False:
                    result.violations += 1
                if report.finding:
                    result.findings.append(f"p={p} ℓ=({first}, {second}): {report.finding}")
    if result.findings:
        logger.warning("%d findings over %d pairs", len(result.findings), len(result.rows))
    return result
