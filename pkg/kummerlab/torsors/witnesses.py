"""Membership in H¹_ω, kernel tests for θ and solvability witnesses."""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Mapping, Sequence, Tuple

from kummerlab.annuli import Annulus
from kummerlab.cochains import Cochain, SemiGraph, harm_group, is_bridge
from kummerlab.errors import (
    BridgeEdge,
    InconsistentVerdict,
    InputError,
    MissingEdgeClass,
    OffAnnulus,
)
from kummerlab.newton import NewtonData, eval_at, normalize, split_locus
from kummerlab.points import TrunkPoint, fiber_count
from kummerlab.residues import ExtScalar, LaurentExt
from kummerlab.torsors.classes import TorsorClass, cochain_value
from kummerlab.torsors.radii import (
    DEFAULT_I_MAX,
    RadiusBound,
    RigidPoint,
    segment_verdict,
    split_radius_rigid,
)
from kummerlab.torsors.verdicts import DEFAULT_MAX_ITER, Verdict
from kummerlab.valnum import (
    NEG_INF,
    POS_INF,
    LogInterval,
    Thresholds,
    as_fraction,
    is_finite,
    require_prime,
)

logger = logging.getLogger(__name__)


class Membership(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class End(str, Enum):
    """An end ω of the annulus"""

    LO = "lo"
    HI = "hi"


def threshold_point(annulus: Annulus, alpha: RigidPoint) -> TrunkPoint:
    """The point of [α, r(α)] at distance p/(p-1) below the skeleton

    Raises:
        OffAnnulus: If |α| is not inside the annulus
    """
    m = alpha.m
    if not annulus.interval.contains_interior(m):
        raise OffAnnulus(f"|α| = p^{m} is not inside {annulus.interval}")
    tau = Thresholds.for_prime(alpha.p).tau
    return TrunkPoint(m, m + tau, alpha.tag)


@dataclass(frozen=True)
class FiberCheck:
    radius: Fraction
    verdict: Verdict
    count: int
    consistent: bool


def fiber_verification(
    tc: TorsorClass, alpha: RigidPoint, radii: Sequence
) -> List[FiberCheck]:
    """Compare verdicts on [α, r(α)] with fiber counts of z ↦ z^p

    Only classes with cochain prime to p reduce to the coordinate torsor;
    for those the fiber is full exactly when the verdict is Split.

    Raises:
        InputError: If the cochain of the class vanishes
    """
    p = require_prime(tc.n)
    if cochain_value(tc) == 0:
        raise InputError("Fiber verification needs a class with cochain prime to p")
    m = alpha.m
    checks = []
    for rho in sorted({as_fraction(r) for r in radii}, reverse=True):
        verdict = segment_verdict(tc, alpha, rho)
        count = fiber_count(p, 1, m, rho) if rho < m else 1
        if verdict.is_unknown:
            consistent = True
        else:
            consistent = verdict.is_split == (count == p)
        checks.append(FiberCheck(rho, verdict, count, consistent))
    return checks


@dataclass(frozen=True)
class ThresholdWitness:
    """A μ_p class with nonzero cochain on an edge and its checks near x_α"""

    cochain: Cochain
    torsor: TorsorClass
    point: TrunkPoint
    radius: RadiusBound
    checks: Tuple[FiberCheck, ...]


def witness_threshold_solvable(
    annulus: Annulus, alpha: RigidPoint, graph: SemiGraph, edge: str
) -> ThresholdWitness:
    """Exhibit the class that makes the threshold point x_α solvable

    A harmonic cochain mod p that is 1 on the edge is taken from the
    generators of Harm(G, Z/pZ); on the edge annulus the class is T.

    Raises:
        BridgeEdge: If no harmonic cochain is nonzero on the edge
        OffAnnulus: If |α| is not inside the annulus
        InconsistentVerdict: If the verdicts disagree with the fiber counts
    """
    p = require_prime(alpha.p)
    point = threshold_point(annulus, alpha)
    graph.edge(edge)
    if is_bridge(graph, edge):
        raise BridgeEdge(f"Edge '{edge}' is a bridge")
    cochain = None
    for generator in harm_group(graph, p).generators:
        value = generator.value(edge)
        if value:
            cochain = generator.scale(pow(value, -1, p))
            break
    if cochain is None:
        raise BridgeEdge(f"Every harmonic cochain mod {p} vanishes on '{edge}'")
    orientation = annulus.orientation
    torsor = TorsorClass.from_laurent(
        p, LaurentExt.monomial(ExtScalar.of(p, 1), orientation), annulus
    )
    radius = split_radius_rigid(torsor, alpha)
    threshold = point.radius
    probes = [threshold - Fraction(1, 2), threshold]
    if threshold + Fraction(1, 2) < alpha.m:
        probes.append(threshold + Fraction(1, 2))
    checks = tuple(fiber_verification(torsor, alpha, probes))
    if radius.value != threshold or not all(check.consistent for check in checks):
        raise InconsistentVerdict(f"Threshold witness at {threshold} failed its checks")
    return ThresholdWitness(cochain, torsor, point, radius, checks)


@dataclass(frozen=True)
class SkeletonWitness:
    """Rescaling that sends η_{0,p^λ} to η_{1,p^tau}, and branching there"""

    lam: Fraction
    rescale: Fraction
    degree: int
    count_at: int
    count_below: int


def witness_skeleton_solvable(lam, p: int, delta=Fraction(1, 2)) -> SkeletonWitness:
    """Witness that the skeleton point η_{0,p^λ} is solvable"""
    th = Thresholds.for_prime(p)
    lam = as_fraction(lam)
    delta = as_fraction(delta)
    if delta <= 0:
        raise InputError(f"Offset must be positive, got {delta}")
    return SkeletonWitness(
        lam,
        th.tau - lam,
        p,
        fiber_count(p, 1, 0, th.tau),
        fiber_count(p, 1, 0, th.tau - delta),
    )


def _germ_degree(u: NewtonData, interval: LogInterval, end: End) -> Tuple[object, int]:
    """Level of u at the end and the term that dominates just inside it"""
    if end is End.HI:
        edge = interval.hi
        if edge == POS_INF:
            degree = max(u.degrees())
            level = POS_INF if degree > 0 else (NEG_INF if degree < 0 else u.as_dict()[0])
            return level, degree
        level = eval_at(u, edge)
        return level, min(d for d, c in u if c + d * edge == level)
    edge = interval.lo
    if edge == NEG_INF:
        degree = min(u.degrees())
        level = POS_INF if degree < 0 else (NEG_INF if degree > 0 else u.as_dict()[0])
        return level, degree
    level = eval_at(u, edge)
    return level, max(d for d, c in u if c + d * edge == level)


def h1_omega_member(tc: TorsorClass, end) -> Membership:
    """Whether the class is trivial on a neighbourhood of the end ω

    Yes when the guaranteed split locus reaches ω; No when near ω the level
    of u exceeds p^tau through a term of degree prime to p, whose residue is
    never a p-th power; Unknown otherwise.
    """
    end = End(end)
    p = require_prime(tc.n)
    interval = tc.annulus.interval
    if cochain_value(tc) != 0:
        return Membership.NO
    _, _, u = normalize(tc.newton, interval)
    if u is None:
        return Membership.YES
    locus = split_locus(u, interval, p)
    if not locus.interior().is_empty():
        if end is End.HI and (locus.hi, locus.hi_closed) == (interval.hi, interval.hi_closed):
            return Membership.YES
        if end is End.LO and (locus.lo, locus.lo_closed) == (interval.lo, interval.lo_closed):
            return Membership.YES
    level, degree = _germ_degree(u, interval, end)
    tau = Thresholds.for_prime(p).tau
    if level > tau and degree % p != 0:
        return Membership.NO
    return Membership.UNKNOWN


def probe_magnitude(interval: LogInterval) -> Fraction:
    """Default rigid probe: the midpoint rounded to the nearest 1/2, ties upward"""
    if interval.is_bounded():
        middle = interval.midpoint()
        rounded = Fraction(math.floor(middle * 2 + Fraction(1, 2)), 2)
        return rounded if interval.contains_interior(rounded) else middle
    if is_finite(interval.hi):
        return interval.hi - 1
    if is_finite(interval.lo):
        return interval.lo + 1
    return Fraction(0)


def kernel_test_annulus(
    tc: TorsorClass, i_max: int = DEFAULT_I_MAX, max_iter: int = DEFAULT_MAX_ITER
) -> bool:
    """Whether the μ_p class lies in ker θ, cross-checked by the radius dichotomy

    Raises:
        InconsistentVerdict: If the splitting radius contradicts the cochain
    """
    p = require_prime(tc.n)
    in_kernel = cochain_value(tc) == 0
    m = probe_magnitude(tc.annulus.interval)
    radius = split_radius_rigid(tc, RigidPoint.at_magnitude(p, m, tag="probe"), i_max, max_iter)
    minimal = m + Thresholds.for_prime(p).tau
    if in_kernel != (radius.lower > minimal):
        raise InconsistentVerdict(
            f"Cochain {'0' if in_kernel else 'nonzero'} but radius bound "
            f"[{radius.lower}, {radius.upper}] at m={m}"
        )
    return in_kernel


def kernel_test_curve(
    graph: SemiGraph,
    classes: Mapping[str, TorsorClass],
    edge_classes: Mapping[str, TorsorClass],
    i_max: int = DEFAULT_I_MAX,
    max_iter: int = DEFAULT_MAX_ITER,
) -> bool:
    """Whether f lies in ker θ, read off splitting sets on every edge

    For each edge e, ``classes[e]`` is f on C_e and ``edge_classes[e]`` is a
    class f_e with nonzero cochain on e. f is in the kernel iff on each edge
    some point splits for f and not for f_e; at a shared rigid probe this
    means the radius of f exceeds the minimal radius of f_e.

    Raises:
        BridgeEdge: If an edge is a bridge
        MissingEdgeClass: If some edge lacks f or f_e
    """
    verdict = True
    for name in graph.edge_names():
        if is_bridge(graph, name):
            raise BridgeEdge(f"Edge '{name}' is a bridge")
        if name not in classes or name not in edge_classes:
            raise MissingEdgeClass(f"No class of f or f_e supplied for edge '{name}'")
        f, f_e = classes[name], edge_classes[name]
        if cochain_value(f_e) == 0:
            raise InputError(f"f_e must have nonzero cochain on '{name}'")
        p = require_prime(f.n)
        m = probe_magnitude(f.annulus.interval)
        alpha = RigidPoint.at_magnitude(p, m, tag=f"probe:{name}")
        radius_f = split_radius_rigid(f, alpha, i_max, max_iter)
        radius_e = split_radius_rigid(f_e, alpha, i_max, max_iter)
        separated = radius_f.lower > radius_e.upper
        logger.debug("edge %s: f %s, f_e %s", name, radius_f, radius_e)
        verdict = verdict and separated
    return verdict
