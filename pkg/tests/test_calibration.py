import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morphkit import (
    DataError,
    calibrate,
    det_curve,
    fmr_at_threshold,
    fnmr_at_threshold,
    threshold_at_fmr,
)

score_sets = st.lists(
    st.floats(min_value=0.0, max_value=2.0, allow_nan=False), min_size=1, max_size=40
)


def test_rates_perfectly_separated():
    assert fmr_at_threshold([0.9], 0.5) == 0.0
    assert fnmr_at_threshold([0.1], 0.5) == 0.0
    points = det_curve([0.1], [0.9])
    assert (0.0, 0.0, 0.9) in points


def test_rates_fully_inverted():
    assert fmr_at_threshold([0.1], 0.5) == 1.0
    assert fnmr_at_threshold([0.9], 0.5) == 1.0


def test_rates_hand_counted():
    mated, nonmated = [0.1, 0.3], [0.2, 0.4]
    assert fmr_at_threshold(nonmated, 0.25) == 0.5
    assert fnmr_at_threshold(mated, 0.25) == 0.5
    by_threshold = {t: (f, n) for f, n, t in det_curve(mated, nonmated)}
    assert by_threshold[0.3] == (0.5, 0.5)


def test_det_curve_sentinels():
    points = det_curve([0.1, 0.3], [0.2, 0.4])
    assert points[0][2] == -np.inf and points[0][:2] == (0.0, 1.0)
    assert points[-1][2] == np.inf and points[-1][:2] == (1.0, 0.0)


def test_det_curve_empty_inputs():
    with pytest.raises(DataError, match="empty"):
        det_curve([], [0.1])
    with pytest.raises(DataError, match="empty"):
        det_curve([0.1], [])


def test_threshold_at_fmr_ladder():
    nonmated = [round(0.5 + 0.1 * i, 10) for i in range(10)]
    tau = threshold_at_fmr(nonmated, 0.1)
    assert tau == pytest.approx(0.6)
    assert fmr_at_threshold(nonmated, tau) == pytest.approx(0.1)


def test_threshold_at_fmr_zero_target():
    nonmated = [0.7, 0.2, 0.9]
    tau = threshold_at_fmr(nonmated, 0.0)
    assert tau == 0.2
    assert fmr_at_threshold(nonmated, tau) == 0.0


def test_threshold_at_fmr_duplicates_stay_conservative():
    nonmated = [0.5, 0.5, 0.5, 0.5]
    tau = threshold_at_fmr(nonmated, 0.4)
    assert fmr_at_threshold(nonmated, tau) <= 0.4


def test_threshold_at_fmr_validates():
    with pytest.raises(DataError):
        threshold_at_fmr([], 0.1)
    with pytest.raises(DataError):
        threshold_at_fmr([0.1], 1.0)


def test_fnmr_boundaries():
    assert fnmr_at_threshold([0.1, 0.2, 0.9], 0.5) == pytest.approx(1 / 3)
    # lenient threshold above every mated score: nothing fails to match
    assert fnmr_at_threshold([0.1, 0.2], 0.95) == 0.0
    assert fnmr_at_threshold([0.1, 0.2], 0.1) == 1.0  # tau == min, >= rule


@given(score_sets, score_sets)
def test_det_monotone(mated, nonmated):
    points = det_curve(mated, nonmated)
    fmrs = [p[0] for p in points]
    fnmrs = [p[1] for p in points]
    assert fmrs == sorted(fmrs)
    assert fnmrs == sorted(fnmrs, reverse=True)


@given(score_sets, st.floats(min_value=0.0, max_value=0.999))
def test_achieved_fmr_never_exceeds_target(nonmated, target):
    tau = threshold_at_fmr(nonmated, target)
    assert fmr_at_threshold(nonmated, tau) <= target


@given(score_sets, score_sets)
def test_det_swapped_labels_mirror(mated, nonmated):
    forward = det_curve(mated, nonmated)
    swapped = det_curve(nonmated, mated)
    by_t = {t: (f, n) for f, n, t in swapped}
    for fmr, fnmr, t in forward:
        sw_fmr, sw_fnmr = by_t[t]
        assert sw_fmr == pytest.approx(1.0 - fnmr)
        assert sw_fnmr == pytest.approx(1.0 - fmr)


def test_calibrate_bundle():
    rng = np.random.default_rng(0)
    mated = rng.uniform(0.0, 0.6, size=300).tolist()
    nonmated = rng.uniform(0.5, 1.5, size=300).tolist()
    result = calibrate("frs-x", mated, nonmated, 0.01)
    assert result.frs_id == "frs-x"
    assert result.achieved_fmr <= result.target_fmr
    assert 0.0 <= result.fnmr_at_tau <= 1.0
    assert result.fnmr_at_tau == fnmr_at_threshold(mated, result.tau)
    assert len(result.det_points) == len({p[2] for p in result.det_points})
