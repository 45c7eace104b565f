"""Independent checks of splitting verdicts.

The root search refutes a NotSplit certificate by finding a residue whose
p-th power is the certified residue. The recentering oracle decides points
η_{α,ρ} below the skeleton from a longer expansion in S = T - α, using only
the sufficient bound and the residue of a single dominant monomial.
"""

import itertools
import logging
from typing import Optional

from kummerlab.newton import normalize
from kummerlab.oracles.base import BaseOracle
from kummerlab.residues import FpLaurent
from kummerlab.torsors.classes import TorsorClass, cochain_value
from kummerlab.torsors.radii import DEFAULT_I_MAX, RigidPoint, recenter
from kummerlab.torsors.verdicts import Verdict, VerdictKind
from kummerlab.valnum import Thresholds, as_fraction, is_finite

logger = logging.getLogger(__name__)

# candidate roots tried before giving up
MAX_CANDIDATES = 10**5


class ResidueRootSearchOracle(BaseOracle):
    """p-th root of a residue polynomial by exhaustive search"""

    name = "residue-root-search"

    @staticmethod
    def _window(residue: FpLaurent, p: int):
        support = residue.support()
        lo = min(support) // p
        hi = -(-max(support) // p)
        return lo, hi

    def searchable(self, residue: FpLaurent, p: int) -> bool:
        lo, hi = self._window(residue, p)
        return p ** (hi - lo + 1) <= MAX_CANDIDATES

    def compute(self, residue: FpLaurent, p: int) -> Optional[FpLaurent]:
        """Raises ValueError when the candidate space exceeds MAX_CANDIDATES"""
        if not self.searchable(residue, p):
            raise ValueError(f"Candidate roots of {residue} exceed the search limit")
        lo, hi = self._window(residue, p)
        for values in itertools.product(range(p), repeat=hi - lo + 1):
            candidate = FpLaurent(p, tuple(zip(range(lo, hi + 1), values)))
            if not candidate.is_zero() and candidate ** p == residue:
                return candidate
        return None

    def agrees(self, result: Verdict, p: int) -> bool:
        if result.kind is not VerdictKind.NOT_SPLIT or result.residue is None:
            return True
        if not self.searchable(result.residue, p):
            logger.debug("root search skipped for %s", result.residue)
            return True
        return self.compute(result.residue, p) is None


class RecenteringOracle(BaseOracle):
    """Verdict over η_{α,ρ} from the expansion of g(α + S) up to i_max"""

    name = "recentering"

    def __init__(self, i_max: int = 2 * DEFAULT_I_MAX):
        self.i_max = i_max

    def compute(self, tc: TorsorClass, alpha: RigidPoint, rho) -> Optional[VerdictKind]:
        p = tc.n
        rho = as_fraction(rho)
        if cochain_value(tc) != 0:
            return None
        tau = Thresholds.for_prime(p).tau
        g = tc.require_laurent()
        i0, _, _ = normalize(tc.newton, tc.annulus.interval)
        rec = recenter(g.shift(-i0), alpha.value, self.i_max)
        base = rec.coefficients[0].magnitude()
        levels = {
            i: a.magnitude() - base + i * rho
            for i, a in enumerate(rec.coefficients)
            if i > 0 and not a.is_zero()
        }
        tail = rec.tail_at(rho)
        tail = tail - base if is_finite(tail) else tail
        top = max(list(levels.values()) + [tail])
        if top < tau:
            return VerdictKind.SPLIT
        winners = [i for i, level in levels.items() if level == top]
        if top > tau and tail < top and len(winners) == 1 and winners[0] % p:
            return VerdictKind.NOT_SPLIT
        logger.debug("recentering oracle undecided at ρ=%s (level %s)", rho, top)
        return None

    def agrees(
        self, result: Verdict, tc: TorsorClass, alpha: RigidPoint, rho
    ) -> bool:
        if result.is_unknown or as_fraction(rho) >= alpha.m:
            return True
        reference = self.compute(tc, alpha, rho)
        return reference is None or reference is result.kind

