"""Dominance by evaluating every term on a grid of skeleton points."""

from fractions import Fraction
from typing import List, Optional

from kummerlab.newton import NewtonData
from kummerlab.oracles.base import BaseOracle
from kummerlab.valnum import LogInterval, is_finite

# grid points strictly inside a bounded interval
GRID = 16


def _argmax(nd: NewtonData, lam: Fraction) -> List[int]:
    values = {degree: value + degree * lam for degree, value in nd}
    top = max(values.values())
    return [degree for degree, value in values.items() if value == top]


class SamplingDominanceOracle(BaseOracle):
    """Candidate degree that is the unique argmax at every sample

    Terms are affine in λ, so sampling the interior together with the
    behaviour at each end decides strict dominance exactly: open ends only
    need a weak maximum, closed ends a strict one, infinite ends the
    extreme degree.
    """

    name = "sampling-dominance"

    def _samples(self, interval: LogInterval) -> List[Fraction]:
        if interval.is_bounded():
            lo, hi = interval.lo, interval.hi
        elif is_finite(interval.lo):
            lo, hi = interval.lo, interval.lo + 2 * GRID
        elif is_finite(interval.hi):
            lo, hi = interval.hi - 2 * GRID, interval.hi
        else:
            lo, hi = Fraction(-GRID), Fraction(GRID)
        return [lo + (hi - lo) * k / (GRID + 1) for k in range(1, GRID + 1)]

    def compute(self, nd: NewtonData, interval: LogInterval) -> Optional[int]:
        samples = self._samples(interval)
        winners = _argmax(nd, samples[0])
        if len(winners) != 1:
            return None
        candidate = winners[0]
        for lam in samples[1:]:
            if _argmax(nd, lam) != [candidate]:
                return None
        for end, closed, extreme in (
            (interval.lo, interval.lo_closed, min),
            (interval.hi, interval.hi_closed, max),
        ):
            if not is_finite(end):
                if candidate != extreme(nd.degrees()):
                    return None
                continue
            winners = _argmax(nd, end)
            if candidate not in winners or (closed and len(winners) > 1):
                return None
        return candidate

    def agrees(self, result: Optional[int], nd: NewtonData, interval: LogInterval) -> bool:
        return self.compute(nd, interval) == result
