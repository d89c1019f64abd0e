"""Tests for concordance, censored Brier score and calibration tables.

Path: tests/test_metrics.py
"""

import itertools

import numpy as np
import pytest

from survnet.common.errors import UndefinedMetricError, ValidationError
from survnet.survival.baselines import kaplan_meier
from survnet.survival.metrics import brier_censored, c_index, calibration_table

def brute_force_c_index(risk, times, events) -> float:
    credit = comparable = 0.0
    for i, j in itertools.permutations(range(len(times)), 2):
        if not events[i]:
            continue
        if times[i] < times[j] or (times[i] == times[j] and not events[j]):
            comparable += 1
            credit += 1.0 if risk[i] > risk[j] else 0.5 if risk[i] == risk[j] else 0.0
    return credit / comparable

def test_c_index_examples():
    assert c_index([2, 1], [1, 2], [1, 1]) == 1.0
    assert c_index([1, 1], [1, 2], [1, 1]) == 0.5
    assert c_index([1, 2], [1, 2], [1, 1]) == 0.0
    assert c_index([3, 2, 1], [1, 2, 3], [1, 0, 1]) == 1.0

def test_c_index_tied_times():
    # the event at the tied time is compared with the censoring
    assert c_index([2, 1], [1, 1], [1, 0]) == 1.0
    with pytest.raises(UndefinedMetricError):
        c_index([2, 1], [1, 1], [1, 1])

def test_c_index_matches_pair_enumeration():
    rng = np.random.default_rng(21)
    for _ in range(30):
        n = int(rng.integers(2, 30))
        times = rng.integers(1, 10, size=n).astype(float)
        events = rng.random(n) < 0.6
        events[0] = True
        times[0] = 0.5
        risk = rng.integers(0, 4, size=n).astype(float)
        assert c_index(risk, times, events) == pytest.approx(brute_force_c_index(risk, times, events))

def random_outcomes(rng, n):
    """Outcomes with tied times and at least one comparable pair."""
    times = rng.integers(1, 20, size=n).astype(float)
    events = rng.random(n) < 0.6
    events[0] = True
    times[0] = 0.5
    return times, events

def test_c_index_is_invariant_to_increasing_transforms():
    rng = np.random.default_rng(31)
    for _ in range(25):
        n = int(rng.integers(5, 60))
        times, events = random_outcomes(rng, n)
        risk = rng.normal(size=n)
        risk[rng.random(n) < 0.2] = 0.0
        expected = c_index(risk, times, events)
        for transformed in (np.exp(risk), risk ** 3 + 2.0 * risk, np.arctan(risk) - 7.0):
            assert c_index(transformed, times, events) == pytest.approx(expected, abs=1e-12)

def test_c_index_of_negated_risk_is_complement():
    rng = np.random.default_rng(32)
    for _ in range(25):
        n = int(rng.integers(5, 60))
        times, events = random_outcomes(rng, n)
        risk = rng.normal(size=n)
        assert c_index(risk, times, events) + c_index(-risk, times, events) == pytest.approx(1.0, abs=1e-12)

def test_c_index_threads_agree():
    rng = np.random.default_rng(4)
    times = rng.exponential(100, size=500)
    events = rng.random(500) < 0.7
    risk = rng.normal(size=500)
    single = c_index(risk, times, events)
    assert c_index(risk, times, events, threads=4, chunk_size=37) == pytest.approx(single, abs=1e-15)

def test_c_index_errors():
    with pytest.raises(ValidationError):
        c_index([1, 2], [1, 2, 3], [1, 1, 1])
    with pytest.raises(UndefinedMetricError):
        c_index([1, 2], [1, 2], [0, 0])

def test_brier_examples():
    assert brier_censored([0.8, 0.3], [5, 6], [1, 1], 1.0) == pytest.approx(0.265)
    assert brier_censored([1.0, 0.0], [5, 0.5], [1, 1], 1.0) == 0.0

    # censored at 0.5: contributes nothing, the survivor gets weight 1 / G(1) = 2
    assert brier_censored([0.1, 0.8], [0.5, 5], [0, 1], 1.0) == pytest.approx(0.04)

    with pytest.raises(ValidationError):
        brier_censored([], [], [], 1.0)
    with pytest.raises(ValidationError):
        brier_censored([0.5], [1, 2], [1, 1], 1.0)

def test_brier_failure_uses_left_limit():
    """A failure tied with a censoring is weighted by G just before the tie."""
    value = brier_censored([0.0, 0.0, 0.0], [2, 2, 5], [1, 0, 1], 3.0)
    # G(2-) = 1 for the failure, the survivor has weight 1 / G(3) = 3 / 2
    assert value == pytest.approx((0.0 + 0.0 + 1.5 * 1.0) / 3)

def test_brier_without_censoring_is_mean_squared_error():
    rng = np.random.default_rng(33)
    for _ in range(25):
        n = int(rng.integers(1, 80))
        times = np.round(rng.exponential(50.0, size=n), 1) + 0.1
        pred = rng.random(n)
        t = float(rng.uniform(0.0, 120.0))
        expected = np.mean(((times > t) - pred) ** 2)
        assert brier_censored(pred, times, np.ones(n, dtype=bool), t) == pytest.approx(expected, abs=1e-12)

def test_brier_of_kaplan_meier_prediction_without_censoring():
    rng = np.random.default_rng(34)
    for _ in range(25):
        n = int(rng.integers(2, 80))
        times = rng.integers(1, 30, size=n).astype(float)
        events = np.ones(n, dtype=bool)
        t = float(rng.integers(0, 32))
        s = float(kaplan_meier(times, events)(t))
        value = brier_censored(np.full(n, s), times, events, t)
        assert value == pytest.approx(s * (1.0 - s), abs=1e-12)

def test_calibration_counts():
    rng = np.random.default_rng(9)
    times = rng.exponential(10, size=20)
    table = calibration_table(rng.random(20), times, np.ones(20), t=5.0, groups=10)
    assert [row.n for row in table.rows] == [2] * 10
    assert table.total == 20
    assert [row.group for row in table.rows] == list(range(1, 11))

    uneven = calibration_table(rng.random(23), rng.exponential(10, size=23), np.ones(23), 5.0, groups=10)
    assert sorted({row.n for row in uneven.rows}) == [2, 3]

def test_calibration_constant_predictions():
    times = np.arange(1.0, 41.0)
    table = calibration_table(np.full(40, 0.6), times, np.ones(40), t=10.0, groups=4)
    assert all(row.mean_predicted == pytest.approx(0.6) for row in table.rows)

def test_calibration_oracle():
    rng = np.random.default_rng(2)
    times = rng.exponential(10, size=200)
    t = 7.0
    oracle = (times > t).astype(float)
    table = calibration_table(oracle, times, np.ones(200), t=t, groups=10)
    available = [row for row in table.rows if row.available]
    assert len(available) >= 5
    for row in available:
        assert abs(row.mean_predicted - row.observed) <= 1.0 / row.n

def test_calibration_unavailable_group(caplog):
    pred = np.array([0.1, 0.2, 0.8, 0.9])
    times = np.array([1.0, 2.0, 50.0, 60.0])
    table = calibration_table(pred, times, np.ones(4), t=10.0, groups=2)
    low, high = table.rows
    assert not low.available and np.isnan(low.observed)
    assert high.available and high.observed == 1.0
    assert "no follow-up" in caplog.text

    frame = table.to_frame()
    assert list(frame.columns) == ["time", "group", "n", "mean_predicted", "observed", "available"]
    assert frame["time"].unique().tolist() == [10.0]

def test_calibration_errors():
    with pytest.raises(ValidationError):
        calibration_table([0.5] * 3, [1, 2, 3], [1, 1, 1], 1.0, groups=4)
