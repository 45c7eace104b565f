import pytest
from hypothesis import given, settings

from kummerlab.newton import NewtonData, dominant_degree
from kummerlab.oracles.dominance import SamplingDominanceOracle
from kummerlab.oracles.splitting import RecenteringOracle, ResidueRootSearchOracle
from kummerlab.residues import FpLaurent
from kummerlab.torsors.radii import RigidPoint
from kummerlab.torsors.verdicts import Verdict, VerdictKind, split_verdict_at
from kummerlab.valnum import NEG_INF, POS_INF, LogInterval
from tests.strategies import bounded_intervals, newton_data

UNIT_POINT = RigidPoint.at_magnitude(3, 0)


class TestRootSearch:
    def test_finds_cube_root(self):
        oracle = ResidueRootSearchOracle()
        assert oracle.compute(FpLaurent.from_mapping(3, {3: 1}), 3) == FpLaurent.from_mapping(
            3, {1: 1}
        )
        assert oracle.compute(FpLaurent.from_mapping(3, {-3: 2, 0: 1}), 3) == (
            FpLaurent.from_mapping(3, {-1: 2, 0: 1})
        )
        assert oracle.compute(FpLaurent.from_mapping(3, {1: 1}), 3) is None

    def test_confirms_counterexample_certificates(self, counterexample):
        oracle = ResidueRootSearchOracle()
        for lam in (-1, -2):
            verdict = split_verdict_at(counterexample, lam)
            assert verdict.residue is not None
            assert oracle.agrees(verdict, 3)

    def test_refutes_a_false_certificate(self):
        forged = Verdict.not_split("t^3", residue=FpLaurent.from_mapping(3, {3: 1}))
        assert not ResidueRootSearchOracle().agrees(forged, 3)
        assert ResidueRootSearchOracle().agrees(Verdict.split(), 3)

    def test_skips_residues_beyond_the_search_limit(self):
        oracle = ResidueRootSearchOracle()
        wide = FpLaurent.from_mapping(3, {0: 1, 40: 1})
        assert not oracle.searchable(wide, 3)
        with pytest.raises(ValueError):
            oracle.compute(wide, 3)
        assert oracle.agrees(Verdict.not_split(str(wide), residue=wide), 3)


class TestRecentering:
    def test_split_below_the_radius(self, gentle):
        assert RecenteringOracle().compute(gentle, UNIT_POINT, -1) is VerdictKind.SPLIT

    def test_not_split_through_a_dominant_linear_term(self, gentle):
        assert RecenteringOracle().compute(gentle, UNIT_POINT, 0) is VerdictKind.NOT_SPLIT

    def test_undecided_for_nonzero_cochain(self, coordinate):
        assert RecenteringOracle().compute(coordinate, UNIT_POINT, -1) is None

    def test_agreement(self, gentle):
        oracle = RecenteringOracle()
        assert oracle.agrees(Verdict.split(), gentle, UNIT_POINT, -1)
        assert not oracle.agrees(Verdict.not_split("t"), gentle, UNIT_POINT, -1)
        assert oracle.agrees(Verdict.not_split("t"), gentle, UNIT_POINT, 0)


class TestDominance:
    def test_infinite_ends(self):
        oracle = SamplingDominanceOracle()
        data = NewtonData.from_mapping({1: -5, 0: 0})
        assert oracle.compute(data, LogInterval(5, POS_INF)) == 1
        assert oracle.compute(data, LogInterval(NEG_INF, 5)) == 0
        assert oracle.compute(data, LogInterval.whole()) is None

    @given(newton_data(), bounded_intervals())
    @settings(max_examples=300)
    def test_agrees_with_exact_dominance(self, data, interval):
        if interval.is_empty():
            return
        assert SamplingDominanceOracle().agrees(dominant_degree(data, interval), data, interval)
