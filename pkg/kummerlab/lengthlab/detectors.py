"""Detecting ℓ > p/(p-1) and ℓ > 2p/(p-1) from splitting of μ_p classes."""

import logging
from typing import Iterable, List

from kummerlab.annuli import Annulus
from kummerlab.errors import InconsistentVerdict
from kummerlab.newton import NewtonData, normalize, split_locus
from kummerlab.torsors.classes import TorsorClass
from kummerlab.torsors.witnesses import End, Membership, h1_omega_member
from kummerlab.valnum import (
    NEG_INF,
    LogInterval,
    Thresholds,
    is_finite,
)

logger = logging.getLogger(__name__)


def normalized_interval(annulus: Annulus) -> LogInterval:
    """Open interval (lo, 0) isomorphic to the annulus; lo may be -inf"""
    interval = annulus.interval
    if is_finite(interval.hi):
        return LogInterval.open(interval.lo - interval.hi, 0)
    # reflecting puts a finite lo at 0 and the infinite end below
    return LogInterval.open(NEG_INF, 0)


def common_split_zone(annulus: Annulus, p: int) -> LogInterval:
    """Points where every class of H¹_ω is guaranteed to split: (lo, -c)"""
    interval = normalized_interval(annulus)
    tau = Thresholds.for_prime(p).tau
    return LogInterval.open(interval.lo, tau) if interval.lo < tau else LogInterval.empty()


def converse_witnesses(annulus: Annulus, p: int, depth: int = 4) -> List[TorsorClass]:
    """Classes 1 + p^(y - tau)·T of H¹_ω whose split locus ends exactly at y

    The chosen y are tau/2, tau/4, ... inside the annulus. Each lies above
    -c, so the locus of the class reaches the inner end and covers the
    common split zone.
    """
    interval = normalized_interval(annulus)
    tau = Thresholds.for_prime(p).tau
    target = Annulus(interval)
    points = [tau / 2**k for k in range(1, depth + 1)]
    return [
        TorsorClass(p, NewtonData.from_mapping({0: 0, 1: tau - y}), target)
        for y in points
        if y > interval.lo
    ]


def detect_gt_c(annulus: Annulus, p: int, cross_check: bool = True) -> bool:
    """Whether ℓ > p/(p-1): the common split zone holds two type-2 points

    Raises:
        InconsistentVerdict: If a converse witness misses the zone or ω
    """
    zone = common_split_zone(annulus, p)
    detected = not zone.is_empty()
    if cross_check:
        for tc in converse_witnesses(annulus, p):
            _, _, u = normalize(tc.newton, tc.annulus.interval)
            locus = split_locus(u, tc.annulus.interval, p)
            if not locus.includes(zone) or h1_omega_member(tc, End.LO) is not Membership.YES:
                raise InconsistentVerdict(f"Witness {tc.newton.terms} misses the zone {zone}")
    logger.debug("ℓ > c on %s for p=%d: %s", annulus.interval, p, detected)
    return detected


def extremal_class(annulus: Annulus, p: int) -> TorsorClass:
    """1 + T + p^(-lo)·T^(-1) on (lo, 0), the last class to split"""
    interval = normalized_interval(annulus)
    return TorsorClass(
        p, NewtonData.from_mapping({0: 0, 1: 0, -1: interval.lo}), Annulus(interval)
    )


def detect_gt_2c(annulus: Annulus, p: int, sample: Iterable[TorsorClass] = ()) -> bool:
    """Whether ℓ > 2p/(p-1): every trivial-cochain class splits somewhere

    The extremal class decides; a sampled class with empty locus while the
    extremal one splits is a contradiction.

    Raises:
        InconsistentVerdict: If a sampled class contradicts the extremal one
    """
    interval = normalized_interval(annulus)
    if not is_finite(interval.lo):
        detected = True
    else:
        extremal = extremal_class(annulus, p)
        _, _, u = normalize(extremal.newton, interval)
        detected = not split_locus(u, interval, p).interior().is_empty()
    for tc in sample:
        _, _, u = normalize(tc.newton, tc.annulus.interval)
        if u is None:
            continue
        nonempty = not split_locus(u, tc.annulus.interval.interior(), p).is_empty()
        if detected and not nonempty:
            raise InconsistentVerdict(f"Sampled class {tc.newton.terms} never splits")
    return detected
