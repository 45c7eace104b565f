"""Splitting radii of μ_p classes at rigid points.

Around a rigid point α with |α| = p^m the representative is expanded in
S = T - α. The class is split over η_{α,ρ} whenever the normalized
expansion stays below p^tau there, and each probe below |α| is decided by
the residue refinement of the truncated expansion.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from sympy import binomial

from kummerlab.annuli import Annulus
from kummerlab.errors import InputError, InvalidPoint, OffAnnulus
from kummerlab.newton import NewtonData, dominant_degree, normalize
from kummerlab.residues import ExtScalar, FuncRep, LaurentExt, to_newton
from kummerlab.torsors.classes import TorsorClass, cochain_value
from kummerlab.torsors.verdicts import (
    DEFAULT_MAX_ITER,
    UnknownReason,
    Verdict,
    split_verdict_at,
)
from kummerlab.valnum import (
    NEG_INF,
    LogInterval,
    LogMag,
    Thresholds,
    as_fraction,
    is_finite,
    require_prime,
)

logger = logging.getLogger(__name__)

DEFAULT_I_MAX = 8
# probes needing a longer expansion than this are skipped
PROBE_DEGREE_CAP = 64


@dataclass(frozen=True)
class RigidPoint:
    """A rigid point α of the annulus, known exactly"""

    value: ExtScalar
    tag: str = "α"

    def __post_init__(self):
        if self.value.is_zero():
            raise InvalidPoint("The rigid point 0 is not on an annulus")
        if len(self.value.terms) != 1:
            raise InputError("Rigid points are single-term scalars q·p^s")

    @classmethod
    def at_magnitude(cls, p: int, m, unit=1, tag: str = "α") -> "RigidPoint":
        """The point unit·p^(-m), of magnitude p^m"""
        return cls(ExtScalar.of(p, unit, -as_fraction(m)), tag)

    @property
    def m(self) -> Fraction:
        return self.value.magnitude()

    @property
    def p(self) -> int:
        return self.value.p


@dataclass(frozen=True)
class Recentered:
    """Coefficients A_0..A_{i_max} of g(α + S) and a bound on the rest

    ``tail_base`` bounds log|A_i| + i·m for every i > i_max, so the omitted
    part has magnitude at most tail_base + (i_max + 1)(ρ - m) on η_{α,ρ}.
    """

    coefficients: Tuple[ExtScalar, ...]
    tail_base: LogMag
    m: Fraction

    @property
    def i_max(self) -> int:
        return len(self.coefficients) - 1

    def tail_at(self, rho) -> LogMag:
        if not is_finite(self.tail_base):
            return NEG_INF
        return self.tail_base + (self.i_max + 1) * (as_fraction(rho) - self.m)

    def polynomial(self) -> LaurentExt:
        p = self.coefficients[0].p
        return LaurentExt(p, tuple(enumerate(self.coefficients)))


def recenter(rep: LaurentExt, alpha: ExtScalar, i_max: int = DEFAULT_I_MAX) -> Recentered:
    """Expand g(T) = Σ a_k T^k in S = T - α

    A_i = Σ_k a_k C(k, i) α^(k-i), with generalized binomials for k < 0.
    """
    if isinstance(i_max, bool) or not isinstance(i_max, int) or i_max < 0:
        raise InputError(f"Expansion degree must be an integer ≥ 0, got {i_max!r}")
    if len(alpha.terms) != 1:
        raise InputError("Recentering needs a single-term point α")
    p = rep.p
    coefficients = []
    for i in range(i_max + 1):
        total = ExtScalar.zero(p)
        for k, a in rep.coefficients:
            c = int(binomial(k, i))
            if c:
                total = total + (a * alpha ** (k - i)).scale(c)
        coefficients.append(total)
    m = alpha.magnitude()
    tail_base = max(
        (a.magnitude() + k * m for k, a in rep.coefficients if k < 0 or k > i_max),
        default=NEG_INF,
    )
    return Recentered(tuple(coefficients), tail_base, m)


def recenter_quotient(
    rep: FuncRep, alpha: ExtScalar, i_max: int = DEFAULT_I_MAX
) -> Tuple[Recentered, Recentered]:
    """Recentered numerator and denominator of a quotient"""
    return recenter(rep.numerator, alpha, i_max), recenter(rep.denominator, alpha, i_max)


@dataclass(frozen=True)
class RadiusBound:
    """ϱ in log scale, exactly or as lower ≤ ϱ ≤ upper"""

    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if self.lower > self.upper:
            raise InputError(f"Radius bounds out of order: {self.lower} > {self.upper}")

    @classmethod
    def exact(cls, value) -> "RadiusBound":
        value = as_fraction(value)
        return cls(value, value)

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> Optional[Fraction]:
        return self.lower if self.is_exact else None


def _check_point(tc: TorsorClass, alpha: RigidPoint) -> Fraction:
    m = alpha.m
    if not tc.annulus.interval.contains_interior(m):
        raise OffAnnulus(f"|α| = p^{m} is not inside {tc.annulus.interval}")
    if alpha.p != tc.n:
        raise InputError(f"Point over p={alpha.p} for a class mod {tc.n}")
    return m


def _normalized_expansion(tc: TorsorClass, alpha: RigidPoint, i_max: int):
    """Recentering of g·T^(-i0) with its magnitudes relative to A_0"""
    g = tc.require_laurent()
    i0, _, _ = normalize(tc.newton, tc.annulus.interval)
    rec = recenter(g.shift(-i0), alpha.value, i_max)
    base = rec.coefficients[0].magnitude()
    relative = {
        i: a.magnitude() - base
        for i, a in enumerate(rec.coefficients)
        if i > 0 and not a.is_zero()
    }
    tail = rec.tail_base - base if is_finite(rec.tail_base) else NEG_INF
    return rec, relative, tail


def _probe(
    tc: TorsorClass, alpha: RigidPoint, rho: Fraction, tail: LogMag, i_max: int, max_iter: int
) -> Verdict:
    """Verdict at η_{α,ρ}, ρ < m integral, from a long enough truncation"""
    p = tc.n
    m = alpha.m
    tau = Thresholds.for_prime(p).tau
    degree = i_max
    if is_finite(tail):
        degree = max(i_max, math.floor((tail - tau) / (m - rho)))
    if degree > PROBE_DEGREE_CAP:
        return Verdict.unknown(UnknownReason.ITERATION_CAP)
    g = tc.require_laurent()
    i0, _, _ = normalize(tc.newton, tc.annulus.interval)
    truncated = recenter(g.shift(-i0), alpha.value, degree).polynomial()
    disk = TorsorClass(p, to_newton(truncated), Annulus.open(NEG_INF, m), truncated)
    verdict = split_verdict_at(disk, rho, max_iter)
    logger.debug("probe ρ=%s at %s with degree %d: %s", rho, alpha.tag, degree, verdict.label())
    return verdict


def _sufficient_lower(
    relative, tail: LogMag, m: Fraction, i_max: int, tau: Fraction
) -> Tuple[Fraction, Fraction]:
    """Largest ρ below which the normalized expansion is < p^tau

    Returns:
        Tuple of (bound from the expansion, bound valid for any expansion)
    """
    candidates = [(tau - mu) / i for i, mu in relative.items()]
    if is_finite(tail):
        candidates.append(m + (tau - tail) / (i_max + 1))
    expansion = min(candidates, default=m)
    mu1 = relative.get(1)
    general = m + tau / 2 if mu1 is None else min(tau - mu1, m + tau / 2)
    return min(expansion, m), min(general, m)


def split_radius_rigid(
    tc: TorsorClass,
    alpha: RigidPoint,
    i_max: int = DEFAULT_I_MAX,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RadiusBound:
    """Log splitting radius of a μ_p class at a rigid point

    Args:
        tc: Class with prime modulus p
        alpha: Rigid point strictly inside the annulus
        i_max: Length of the recentered expansion
        max_iter: Residue refinements per probe

    Returns:
        exact(m + tau) for a nonzero cochain; otherwise a bound whose lower
        end exceeds m + tau

    Raises:
        OffAnnulus: If |α| is not inside the annulus
        NormOnlyRepresentative: If the cochain vanishes and no coefficients are known
    """
    p = require_prime(tc.n)
    m = _check_point(tc, alpha)
    tau = Thresholds.for_prime(p).tau
    if cochain_value(tc) != 0:
        return RadiusBound.exact(m + tau)
    _, _, u = normalize(tc.newton, tc.annulus.interval)
    if u is None:
        return RadiusBound.exact(m)
    _, relative, tail = _normalized_expansion(tc, alpha, i_max)
    if not relative and not is_finite(tail):
        return RadiusBound.exact(m)
    expansion, general = _sufficient_lower(relative, tail, m, i_max, tau)
    lower = max(expansion, general)
    if lower >= m:
        return RadiusBound.exact(m)
    if expansion >= general and _monomial_certificate(relative, tail, m, i_max, lower, p, tau):
        return RadiusBound.exact(lower)
    upper = m
    for rho in LogInterval.open(lower, m).integers():
        verdict = _probe(tc, alpha, Fraction(rho), tail, i_max, max_iter)
        if verdict.is_split:
            lower = max(lower, Fraction(rho))
        elif verdict.is_not_split:
            upper = Fraction(rho)
            break
    logger.debug("radius at %s: (%s, %s]", alpha.tag, lower, upper)
    return RadiusBound(lower, upper)


def _monomial_certificate(relative, tail, m, i_max, lower, p, tau) -> bool:
    """Whether one term of degree prime to p crosses tau at ``lower`` and dominates above"""
    terms = dict(relative)
    if is_finite(tail):
        terms[i_max + 1] = tail - (i_max + 1) * m
    degree = dominant_degree(NewtonData.from_mapping(terms), LogInterval.open(lower, m))
    if degree is None or degree > i_max or degree % p == 0:
        return False
    return terms[degree] + degree * lower == tau


def segment_verdict(
    tc: TorsorClass,
    alpha: RigidPoint,
    rho,
    i_max: int = DEFAULT_I_MAX,
    max_iter: int = DEFAULT_MAX_ITER,
) -> Verdict:
    """Verdict over η_{α,ρ} on the segment from α to the skeleton

    Raises:
        InvalidPoint: If ρ exceeds log|α|
    """
    p = require_prime(tc.n)
    rho = as_fraction(rho)
    m = _check_point(tc, alpha)
    if rho > m:
        raise InvalidPoint(f"Radius {rho} exceeds log|α| = {m}")
    if rho == m:
        return split_verdict_at(tc, m, max_iter)
    tau = Thresholds.for_prime(p).tau
    if cochain_value(tc) != 0:
        if rho < m + tau:
            return Verdict.split()
        if rho > m + tau or len(tc.newton) == 1:
            return Verdict.not_split("cochain")
        return Verdict.unknown(UnknownReason.WILD_BOUNDARY)
    _, _, u = normalize(tc.newton, tc.annulus.interval)
    if u is None:
        return Verdict.split()
    _, relative, tail = _normalized_expansion(tc, alpha, i_max)
    expansion, general = _sufficient_lower(relative, tail, m, i_max, tau)
    lower = max(expansion, general)
    if rho < lower:
        return Verdict.split()
    if rho.denominator != 1:
        return Verdict.unknown(UnknownReason.NON_INTEGRAL_RADIUS)
    return _probe(tc, alpha, rho, tail, i_max, max_iter)


def split_radius_power(p: int, h: int, m, j: int = 0) -> Fraction:
    """Log splitting radius of a μ_{p^h} class with cochain p^j·u, u prime to p

    Raises:
        InputError: If h < 1 or j is not in [0, h]
    """
    th = Thresholds.for_prime(p)
    if isinstance(h, bool) or not isinstance(h, int) or h < 1:
        raise InputError(f"Tower height must be a positive integer, got {h!r}")
    if isinstance(j, bool) or not isinstance(j, int) or not 0 <= j <= h:
        raise InputError(f"Expected 0 ≤ j ≤ {h}, got {j!r}")
    m = as_fraction(m)
    if j == h:
        return m
    return m - (h - j) + th.tau1
