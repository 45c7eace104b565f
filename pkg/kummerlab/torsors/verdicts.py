"""Tri-state splitting verdicts of μ_p classes at skeleton points.

A class with trivial cochain is written g = a·T^{pk}·(1 + u) with |u| < 1.
Over η_{0,p^λ} the fiber is totally split as soon as |u| < p^tau. Above that
level the residue of u decides: a residue that is not a p-th power proves
the fiber is not split, and a p-th power residue is lifted to a root w and
divided out as (1 + w)^p, which strictly lowers the level.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from kummerlab.errors import OffAnnulus
from kummerlab.newton import eval_at, normalize
from kummerlab.residues import (
    ExtScalar,
    FpLaurent,
    LaurentExt,
    ResidueFraction,
    residue_at,
)
from kummerlab.torsors.classes import TorsorClass, cochain_value
from kummerlab.valnum import LogMag, Thresholds, as_fraction, require_prime

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 8


class VerdictKind(str, Enum):
    SPLIT = "split"
    NOT_SPLIT = "not-split"
    UNKNOWN = "unknown"


class UnknownReason(str, Enum):
    WILD_BOUNDARY = "wild-boundary"
    NON_INTEGRAL_RADIUS = "non-integral-radius"
    ITERATION_CAP = "iteration-cap"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a splitting test with the data that certifies it

    ``certificate`` is "cochain", "bound" or the residue that is not a p-th
    power; ``level`` is the last computed log-magnitude of u and ``residue``
    the residue behind a NotSplit certificate.
    """

    kind: VerdictKind
    reason: Optional[UnknownReason] = None
    certificate: Optional[str] = None
    level: Optional[LogMag] = None
    iterations: int = 0
    residue: Optional[FpLaurent] = None

    @classmethod
    def split(cls, level=None, iterations: int = 0) -> "Verdict":
        return cls(VerdictKind.SPLIT, None, "bound", level, iterations)

    @classmethod
    def not_split(
        cls, certificate: str, level=None, iterations: int = 0, residue=None
    ) -> "Verdict":
        return cls(VerdictKind.NOT_SPLIT, None, certificate, level, iterations, residue)

    @classmethod
    def unknown(cls, reason: UnknownReason, level=None, iterations: int = 0) -> "Verdict":
        return cls(VerdictKind.UNKNOWN, reason, None, level, iterations)

    @property
    def is_split(self) -> bool:
        return self.kind is VerdictKind.SPLIT

    @property
    def is_not_split(self) -> bool:
        return self.kind is VerdictKind.NOT_SPLIT

    @property
    def is_unknown(self) -> bool:
        return self.kind is VerdictKind.UNKNOWN

    def label(self) -> str:
        if self.is_unknown:
            return f"unknown({self.reason.value})"
        return self.kind.value


def _lift_root(root, level: Fraction, lam: Fraction, p: int) -> LaurentExt:
    """Coefficient-level w with |w| = p^(level/p) whose residue is the root"""
    return LaurentExt(
        p,
        tuple(
            (j, ExtScalar.of(p, d, j * lam - level / p))
            for j, d in root.coefficients
        ),
    )


def refine(
    numerator: LaurentExt,
    denominator: LaurentExt,
    lam: Fraction,
    p: int,
    max_iter: int = DEFAULT_MAX_ITER,
) -> Verdict:
    """Decide whether numerator / denominator is a p-th power at η_{0,p^λ}

    The quotient must be 1 + v with |v| < 1 there and λ must be integral
    once the level exceeds tau.
    """
    tau = Thresholds.for_prime(p).tau
    one = LaurentExt.constant(ExtScalar.of(p, 1))
    for iteration in range(max_iter + 1):
        rest = numerator - denominator
        level = rest.eval_mag(lam) - denominator.eval_mag(lam)
        logger.debug("refine λ=%s iteration %d: level %s", lam, iteration, level)
        if level < tau:
            return Verdict.split(level, iteration)
        if level == tau:
            return Verdict.unknown(UnknownReason.WILD_BOUNDARY, level, iteration)
        if lam.denominator != 1:
            return Verdict.unknown(UnknownReason.NON_INTEGRAL_RADIUS, level, iteration)
        quotient = ResidueFraction(residue_at(rest, lam), residue_at(denominator, lam))
        root = quotient.pth_root()
        if root is None:
            residue = quotient.certificate()
            return Verdict.not_split(str(residue), level, iteration, residue)
        if iteration == max_iter:
            break
        w = _lift_root(root, level, lam, p)
        denominator = denominator * (one + w) ** p
    return Verdict.unknown(UnknownReason.ITERATION_CAP, level, max_iter)


def split_verdict_at(
    tc: TorsorClass, lam, max_iter: int = DEFAULT_MAX_ITER
) -> Verdict:
    """Whether the μ_p class totally splits over the skeleton point η_{0,p^λ}

    Args:
        tc: A class with prime modulus p
        lam: Log-radius inside the annulus
        max_iter: Number of residue refinements before giving up

    Returns:
        Split, NotSplit or Unknown with its reason

    Raises:
        OffAnnulus: If λ is not in the annulus interval
        NotInvertible: If the representative has no dominant monomial
        NormOnlyRepresentative: If refinement is needed without coefficients
    """
    p = require_prime(tc.n)
    lam = as_fraction(lam)
    interval = tc.annulus.interval
    if not interval.contains(lam):
        raise OffAnnulus(f"λ={lam} is not in {interval}")
    if cochain_value(tc) != 0:
        return Verdict.not_split("cochain")
    i0, _, u = normalize(tc.newton, interval)
    if u is None:
        return Verdict.split()
    level = eval_at(u, lam)
    tau = Thresholds.for_prime(p).tau
    if level < tau:
        return Verdict.split(level)
    if level == tau:
        return Verdict.unknown(UnknownReason.WILD_BOUNDARY, level)
    if lam.denominator != 1:
        return Verdict.unknown(UnknownReason.NON_INTEGRAL_RADIUS, level)
    g = tc.require_laurent()
    numerator = g.shift(-i0)
    denominator = LaurentExt.constant(g.coefficient(i0))
    return refine(numerator, denominator, lam, p, max_iter)
