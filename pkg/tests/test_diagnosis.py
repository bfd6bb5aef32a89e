"""Verdict banding, boundaries, and monotonicity."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from romberg.biomech import ComSample
from romberg.diagnosis import (
    BORDERLINE,
    NEGATIVE,
    POSITIVE,
    Diagnosis,
    Thresholds,
    band_verdict,
    diagnose,
    exit_code,
    report_dict,
)
from romberg.errors import NoUsableFrames
from romberg.rwd import RwdSample

import numpy as np


def sample(lateral, ap, k=0):
    com = ComSample(k, np.zeros(2), np.zeros(2), 0.0, 0.0)
    return RwdSample(k, k * 33, lateral, ap, com)


def series(laterals, aps):
    return [sample(l, a, k) for k, (l, a) in enumerate(zip(laterals, aps))]


class TestVerdicts:
    def test_lateral_positive_dominates(self):
        d = diagnose(series([1.0, 10.0, 2.0], [5.0, 1.0, 3.0]))
        assert d.lateral_verdict == POSITIVE
        assert d.ap_verdict == NEGATIVE
        assert d.overall == POSITIVE
        assert d.max_lateral_pct == 10.0
        assert d.max_ap_pct == 5.0

    def test_all_below_bands_is_negative(self):
        d = diagnose(series([3.0, 1.0], [5.0, 2.0]))
        assert d.overall == NEGATIVE

    def test_borderline_on_both_axes(self):
        d = diagnose(series([6.5], [13.0]))
        assert d.lateral_verdict == BORDERLINE
        assert d.ap_verdict == BORDERLINE
        assert d.overall == BORDERLINE

    @pytest.mark.parametrize("edge", [6.0, 7.0])
    def test_band_boundaries_are_borderline(self, edge):
        assert band_verdict(edge, (6.0, 7.0)) == BORDERLINE

    def test_empty_series_raises(self):
        with pytest.raises(NoUsableFrames):
            diagnose([])

    def test_side_view_lateral_absent(self):
        d = diagnose(series([None, None], [5.0, 15.0]))
        assert not d.lateral_available
        assert d.lateral_verdict == NEGATIVE
        assert d.max_lateral_pct is None
        assert d.ap_verdict == POSITIVE
        assert d.overall == POSITIVE

    def test_skipped_count_carried(self):
        d = diagnose(series([1.0], [1.0]), n_skipped=7)
        assert d.n_frames_skipped == 7
        assert d.n_frames_used == 1

    def test_max_attained_by_some_sample(self):
        laterals = [0.5, 4.2, 3.9]
        d = diagnose(series(laterals, [1.0] * 3))
        assert d.max_lateral_pct in laterals


class TestThresholds:
    def test_defaults(self):
        t = Thresholds()
        assert t.lateral_band == (6.0, 7.0)
        assert t.ap_band == (12.0, 14.0)

    @pytest.mark.parametrize("band", [(0.0, 5.0), (5.0, 5.0), (7.0, 6.0), (-1.0, 3.0)])
    def test_invalid_bands_rejected(self, band):
        with pytest.raises(ValueError):
            Thresholds(lateral_band=band)


@settings(max_examples=80, deadline=None)
@given(
    laterals=st.lists(
        st.floats(min_value=0, max_value=30, allow_nan=False), min_size=1, max_size=20
    ),
    bump=st.floats(min_value=0, max_value=30, allow_nan=False),
    index=st.integers(min_value=0, max_value=19),
)
def test_increasing_a_sample_never_downgrades(laterals, bump, index):
    severity = {NEGATIVE: 0, BORDERLINE: 1, POSITIVE: 2}
    index = index % len(laterals)
    base = diagnose(series(laterals, [0.1] * len(laterals)))
    raised = list(laterals)
    raised[index] += bump
    after = diagnose(series(raised, [0.1] * len(laterals)))
    assert severity[after.overall] >= severity[base.overall]


class TestReporting:
    def test_exit_codes(self):
        assert exit_code(diagnose(series([1.0], [1.0]))) == 0
        assert exit_code(diagnose(series([6.5], [1.0]))) == 2
        assert exit_code(diagnose(series([9.0], [1.0]))) == 3

    def test_report_shape(self):
        t = Thresholds()
        d = diagnose(series([6.5], [1.0]), t, n_skipped=2)
        report = report_dict(d, t, {"input": "x.jsonl"})
        assert report["overall"] == BORDERLINE
        assert report["lateral"] == {
            "verdict": BORDERLINE,
            "max_pct": 6.5,
            "available": True,
        }
        assert report["ap"]["available"] is True
        assert report["thresholds"]["lateral_band"] == [6.0, 7.0]
        assert report["frames"] == {"used": 1, "skipped": 2}
        assert report["pipeline_config"]["input"] == "x.jsonl"
