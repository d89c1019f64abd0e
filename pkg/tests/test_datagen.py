"""Tests for simulated cohorts and bootstrap resampling.

Path: tests/test_datagen.py
"""

import numpy as np
import pytest
from pydantic import ValidationError as SchemaError

from survnet.common.enums import Distribution
from survnet.common.errors import ConfigError, ValidationError
from survnet.config.simulation import GroupSpec, SimSpec
from survnet.survival.baselines import kaplan_meier
from survnet.survival.datagen import bootstrap_resample, group_counts, simulate
from survnet.utils.rng import make_rng, open_unit_uniform

def test_no_censoring_means_all_events():
    spec = SimSpec(n_subjects=300, groups=[GroupSpec(fraction=1.0, median=100.0)], rng_seed=1)
    data = simulate(spec)
    assert data.events.all()
    assert data.feature_names == ("group",)
    assert np.all(data.covariates == 0)

def test_two_group_medians():
    data = simulate(SimSpec.two_group_exponential(n_subjects=5000, rng_seed=7))
    assert data.n_subjects == 5000
    for level, median in [(0.0, 200.0), (1.0, 400.0)]:
        mask = data.covariates[:, 0] == level
        assert mask.sum() == 2500
        km = kaplan_meier(data.times[mask], data.events[mask])
        assert km.median() == pytest.approx(median, rel=0.15)
    assert 0.0 < data.events.mean() < 1.0

@pytest.mark.parametrize("distribution", [Distribution.EXPONENTIAL, Distribution.WEIBULL])
def test_raw_draw_median(distribution):
    group = GroupSpec(fraction=1.0, distribution=distribution, median=300.0, shape=1.5)
    data = simulate(SimSpec(n_subjects=100_000, groups=[group], rng_seed=2))
    assert np.median(data.times) == pytest.approx(300.0, rel=0.1)

def test_weibull_scale_parameter():
    group = GroupSpec(fraction=1.0, distribution=Distribution.WEIBULL, scale=250.0, shape=2.0)
    assert group.scale_parameter() == 250.0
    by_median = GroupSpec(fraction=1.0, distribution=Distribution.WEIBULL, median=250.0, shape=2.0)
    assert by_median.scale_parameter() == pytest.approx(250.0 / np.log(2.0) ** 0.5)

def test_administrative_censoring():
    spec = SimSpec.interval_width_study(n_subjects=2000, rng_seed=3)
    data = simulate(spec)
    assert data.times.max() <= 1095.0
    assert not data.events[data.times == 1095.0].any()

def test_simulation_is_reproducible():
    spec = SimSpec.two_group_exponential(n_subjects=500, rng_seed=11)
    first, second = simulate(spec), simulate(spec)
    assert np.array_equal(first.times, second.times)
    assert np.array_equal(first.events, second.events)
    assert np.array_equal(first.covariates, second.covariates)

    other = simulate(spec.merged({"rng_seed": 12}))
    assert not np.array_equal(first.times, other.times)

def test_group_counts():
    assert group_counts(5, [0.5, 0.5]).tolist() == [3, 2]
    assert group_counts(10, [0.3, 0.7]).tolist() == [3, 7]
    assert group_counts(0, [0.5, 0.5]).tolist() == [0, 0]

def test_invalid_designs():
    with pytest.raises(SchemaError):
        SimSpec(groups=[GroupSpec(fraction=0.5, median=10.0)])
    with pytest.raises(SchemaError):
        GroupSpec(fraction=1.0)
    with pytest.raises(SchemaError):
        GroupSpec(fraction=1.0, scale=100.0)
    with pytest.raises(ConfigError):
        SimSpec.from_dict({"groups": [], "n_subjects": 10})

def test_open_unit_uniform():
    draws = open_unit_uniform(make_rng(0), 10_000)
    assert np.all((draws > 0) & (draws <= 1))

def test_bootstrap_resample(two_group_data):
    empty = bootstrap_resample(two_group_data, 0, seed=1)
    assert empty.n_subjects == 0
    assert empty.feature_names == two_group_data.feature_names

    n = two_group_data.n_subjects
    first = bootstrap_resample(two_group_data, n, seed=5)
    second = bootstrap_resample(two_group_data, n, seed=5)
    assert first.n_subjects == n
    assert np.array_equal(first.times, second.times)

    larger = bootstrap_resample(two_group_data, 3 * n, seed=5)
    assert larger.n_subjects == 3 * n
    assert set(larger.times) <= set(two_group_data.times)

    with pytest.raises(ValidationError):
        bootstrap_resample(two_group_data.subset([]), 10, seed=1)
    with pytest.raises(ValidationError):
        bootstrap_resample(two_group_data, -1, seed=1)
