import logging
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kummerlab.annuli import Annulus
from kummerlab.errors import InputError, NonMonotoneProfile
from kummerlab.lengthlab.detectors import (
    common_split_zone,
    converse_witnesses,
    detect_gt_2c,
    detect_gt_c,
    extremal_class,
    normalized_interval,
)
from kummerlab.lengthlab.harness import (
    distance_to_p_multiples,
    length_grid,
    pair_report,
    thm1_sweep,
)
from kummerlab.lengthlab.profiles import (
    ThresholdProfile,
    localize,
    profile_direct,
    profile_from_torsors,
)
from kummerlab.newton import normalize, split_locus
from kummerlab.valnum import NEG_INF, POS_INF, LogInterval, Thresholds

GRID = length_grid("1/8", 6)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_detectors_match_thresholds(p):
    c = Thresholds.for_prime(p).c
    for length in GRID:
        annulus = Annulus.open(-length, 0)
        assert detect_gt_c(annulus, p) is (length > c), length
        assert detect_gt_2c(annulus, p) is (length > 2 * c), length


def test_detectors_ignore_position():
    assert detect_gt_c(Annulus.open(4, 6), 3)
    assert not detect_gt_c(Annulus.open(4, 5), 3)
    assert normalized_interval(Annulus.open(4, 6)) == LogInterval.open(-2, 0)


def test_infinite_annulus_passes_both_detectors():
    for interval in (LogInterval(NEG_INF, 0), LogInterval(0, POS_INF)):
        annulus = Annulus(interval)
        assert detect_gt_c(annulus, 3)
        assert detect_gt_2c(annulus, 3)


def test_common_split_zone():
    assert common_split_zone(Annulus.open(-3, 0), 3) == LogInterval.open(-3, Fraction(-3, 2))
    assert common_split_zone(Annulus.open(-1, 0), 3).is_empty()


def test_converse_witnesses_are_trivial_near_the_inner_end():
    annulus = Annulus.open(-4, 0)
    witnesses = converse_witnesses(annulus, 3)
    assert witnesses
    for tc in witnesses:
        _, _, u = normalize(tc.newton, tc.annulus.interval)
        locus = split_locus(u, tc.annulus.interval, 3)
        assert locus.lo == -4 and locus.hi > Fraction(-3, 2)


def test_extremal_class_split_locus():
    tc = extremal_class(Annulus.open(-4, 0), 3)
    _, _, u = normalize(tc.newton, tc.annulus.interval)
    assert split_locus(u, tc.annulus.interval, 3) == LogInterval.open(
        Fraction(-5, 2), Fraction(-3, 2)
    )


class TestProfiles:
    def test_direct_profile(self):
        profile = profile_direct(5, 3, 8)
        assert profile.as_dict() == {1: True, 2: True, 4: False, 5: False, 7: False, 8: False}

    def test_torsor_profile_agrees(self):
        for length in ("5", "3", "7/2", "19/4"):
            annulus = Annulus.open(-Fraction(length), 0)
            assert profile_from_torsors(annulus, 3, 16) == profile_direct(Fraction(length), 3, 16)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_torsor_profile_with_witnesses(self, p):
        for length in length_grid("1/4", 4):
            annulus = Annulus.open(-length, 0)
            geometric = profile_from_torsors(annulus, p, 12, cross_check=True)
            assert geometric == profile_direct(length, p, 12), length

    def test_localize(self):
        box = localize(profile_direct(5, 3, 32))
        assert (box.lo, box.hi, box.saturated) == (3, 6, False)
        assert box.contains(5) and box.contains(6) and not box.contains(3)

    def test_saturated(self):
        box = localize(profile_direct(POS_INF, 3, 32))
        assert box.saturated and box.hi == POS_INF
        assert box.contains(POS_INF)

    def test_non_monotone(self):
        profile = ThresholdProfile(3, Fraction(3, 2), 2, ((1, False), (2, True)))
        with pytest.raises(NonMonotoneProfile):
            localize(profile)

    def test_validation(self):
        with pytest.raises(InputError):
            profile_direct(0, 3, 8)
        with pytest.raises(InputError):
            profile_direct(1, 3, 0)

    @given(
        st.fractions(min_value=Fraction(1, 16), max_value=40, max_denominator=16),
        st.sampled_from([2, 3, 5, 7]),
    )
    @settings(max_examples=200)
    def test_localization_contains_length(self, length, p):
        box = localize(profile_direct(length, p, 64))
        assert box.contains(length)
        if not box.saturated:
            assert box.width() <= 2 * Thresholds.for_prime(p).c


class TestHarness:
    def test_distance_to_p_multiples(self):
        assert distance_to_p_multiples(5, 3) == 1
        assert distance_to_p_multiples("1/2", 3) == Fraction(5, 2)
        assert distance_to_p_multiples(POS_INF, 3) == POS_INF

    def test_pair_with_equal_profiles(self):
        report = pair_report(1, "5/4", 3, 32)
        assert report.equal_profiles and report.first_difference is None
        assert report.delta == Fraction(1, 4)
        assert report.bound_holds and report.narrow_gap_holds
        assert report.finding is None

    def test_pair_with_different_profiles(self):
        report = pair_report(1, 2, 3, 32)
        assert not report.equal_profiles
        assert report.first_difference == 1
        assert report.bound_holds is None

    def test_narrow_gap_finding(self):
        report = pair_report("49/8", "59/8", 5, 32)
        assert report.equal_profiles
        assert report.bound_holds
        assert report.narrow_gap_holds is False
        assert "narrow gap fails" in report.finding

    def test_saturated_pair(self, caplog):
        with caplog.at_level(logging.WARNING, logger="kummerlab.lengthlab.harness"):
            report = pair_report(100, 200, 3, 8)
        assert report.equal_profiles and report.finite_agreement
        assert report.bound_holds is None and report.delta is None
        assert report.finding == "profiles saturate at n_max=8: length gap undecided"
        assert "length gap undecided" in caplog.text

    def test_saturated_finiteness(self):
        report = pair_report(100, POS_INF, 3, 8)
        assert report.equal_profiles and report.finite_agreement is False
        assert report.bound_holds is None
        assert "finiteness undecided" in report.finding
        assert pair_report(POS_INF, POS_INF, 3, 8).finding is None

    def test_length_grid(self):
        assert length_grid("1/2", 2) == [Fraction(1, 2), 1, Fraction(3, 2), 2]
        with pytest.raises(InputError):
            length_grid(0, 2)

    def test_small_sweep(self):
        result = thm1_sweep(length_grid("1/2", 4), [2, 3], 16)
        assert result.ok
        assert len(result.rows) == 2 * (8 * 7 // 2)

    def test_sweep_beyond_the_truncation(self):
        result = thm1_sweep([100, 200], [3], 8)
        assert result.ok and result.violations == 0
        assert result.findings == [
            "p=3 ℓ=(100, 200): profiles saturate at n_max=8: length gap undecided"
        ]

    @pytest.mark.slow
    def test_full_sweep(self):
        result = thm1_sweep(length_grid("1/8", 20), [2, 3, 5], 32)
        assert (result.violations, result.torsor_mismatches, result.localization_failures) == (
            0,
            0,
            0,
        )
        assert len(result.rows) == 38160
