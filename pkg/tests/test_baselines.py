"""Tests for Kaplan-Meier, Nelson-Aalen and Cox regression.

Path: tests/test_baselines.py
"""

from dataclasses import replace

import numpy as np
import pytest

from survnet.common.errors import (
    DegenerateCovariateError, SeparationError, StateError, ValidationError
)
from survnet.survival.baselines import (
    CoxFit,
    breslow_baseline,
    cox_fit,
    cox_predict,
    cox_survival_curves,
    kaplan_meier,
    loglog_table,
    nelson_aalen,
)
from survnet.survival.data import SurvivalData
from survnet.survival.timegrid import TimeGrid

def partial_loglik(betas, times, events, x) -> np.ndarray:
    """Breslow partial log-likelihood, one value per row of betas."""
    eta = np.atleast_2d(betas) @ np.asarray(x, dtype=float).T
    dead = np.asarray(events, dtype=bool)
    # at_risk[i, j]: subject j is still at risk at subject i's time
    at_risk = (times[None, :] >= times[:, None]).astype(float)
    return eta[:, dead].sum(axis=1) - np.log(np.exp(eta) @ at_risk[dead].T).sum(axis=1)

def grid_maximum(times, events, x) -> np.ndarray:
    """Maximizer of the partial likelihood by successively finer grid searches."""
    p = x.shape[1]
    center = np.zeros(p)
    for half, step in ((6.0, 0.1), (0.3, 0.005), (0.01, 2e-4), (0.001, 1e-5)):
        for _ in range(100):
            axes = [np.arange(c - half, c + half + step / 2, step) for c in center]
            candidates = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, p)
            best = candidates[np.argmax(partial_loglik(candidates, times, events, x))]
            on_edge = np.any(np.abs(np.abs(best - center) - half) < step / 2)
            center = best
            if not on_edge:
                break
    return center

def random_cohort(rng, n_features):
    """Small cohort with tied times and censoring."""
    n = int(rng.integers(8, 21))
    times = rng.integers(1, 9, size=n).astype(float)
    events = rng.random(n) < 0.7
    events[:2] = True
    return SurvivalData(times, events, rng.normal(size=(n, n_features)))

def test_kaplan_meier_examples():
    km = kaplan_meier([10, 20, 30, 40], [1, 0, 0, 0])
    assert km(9.9) == 1.0
    assert km(10) == pytest.approx(0.75)

    km = kaplan_meier([1, 2, 3], [1, 0, 1])
    assert km(1) == pytest.approx(2 / 3)
    assert km(2.5) == pytest.approx(2 / 3)
    assert km(3) == 0.0
    assert km.left_limit(3) == pytest.approx(2 / 3)
    assert km.median() == 3.0

    censored = kaplan_meier([1, 2, 3], [0, 0, 0])
    assert np.all(censored(np.array([0.0, 1.0, 5.0])) == 1.0)
    assert np.isnan(censored.median())

    with pytest.raises(ValidationError):
        kaplan_meier([], [])

def test_kaplan_meier_deaths_before_censorings_at_ties():
    km = kaplan_meier([5, 5, 8], [1, 0, 1])
    assert km(5) == pytest.approx(2 / 3)

def test_nelson_aalen():
    hazard = nelson_aalen([1, 2, 3], [1, 0, 1])
    assert hazard(0.5) == 0.0
    assert hazard(1) == pytest.approx(1 / 3)
    assert hazard(3) == pytest.approx(1 / 3 + 1)

def test_cox_matches_grid_search():
    times = np.array([1.0, 2.0, 3.0, 4.0])
    x = np.array([1.0, 0.0, 1.0, 0.0])
    fit = cox_fit(SurvivalData(times, np.ones(4, dtype=bool), x.reshape(4, 1)))
    assert fit.converged

    betas = np.arange(-5.0, 5.0 + 1e-12, 1e-4)
    best = betas[np.argmax(partial_loglik(betas[:, None], times, np.ones(4), x[:, None]))]
    assert fit.beta[0] == pytest.approx(best, abs=1e-4)
    assert np.all(np.diff(fit.loglik_trace) >= -1e-12)

@pytest.mark.parametrize("n_features", [1, 2])
def test_cox_matches_grid_search_on_random_cohorts(n_features):
    rng = np.random.default_rng(40 + n_features)
    checked = 0
    for _ in range(200):
        data = random_cohort(rng, n_features)
        try:
            fit = cox_fit(data)
        except (SeparationError, DegenerateCovariateError):
            continue
        if np.abs(fit.beta).max() > 5.0:
            # nearly separated; the likelihood is too flat to pin down on a grid
            continue
        assert fit.converged
        best = grid_maximum(data.times, data.events, data.covariates)
        assert fit.beta == pytest.approx(best, abs=1e-3)
        checked += 1
        if checked == 50:
            break
    assert checked == 50

def test_cox_predict_is_nonincreasing_in_time(two_group_data):
    fit = cox_fit(two_group_data)
    times = np.linspace(0.0, 3000.0, 301)
    rows = np.array([[0.0], [0.5], [1.0]])
    surv = np.column_stack([cox_predict(fit, rows, t) for t in times])
    assert np.all(np.diff(surv, axis=1) <= 0.0)
    assert np.all(surv[:, 0] == 1.0)

def test_cox_predict_decreases_in_covariate_with_positive_beta():
    data = SurvivalData([2.0, 3.0, 3.0, 5.0, 7.0, 9.0], [1, 1, 0, 1, 0, 1],
                        np.array([[0.1], [0.4], [-0.3], [1.2], [0.0], [0.8]]))
    fit = CoxFit(beta=np.array([0.7]), converged=True)
    fit = replace(fit, baseline=breslow_baseline(fit, data))
    rows = np.linspace(-2.0, 2.0, 9).reshape(-1, 1)
    for t in [2.0, 4.0, 9.0]:
        assert np.all(np.diff(cox_predict(fit, rows, t)) < 0.0)
    assert np.all(np.diff(cox_predict(replace(fit, beta=np.array([-0.7])), rows, 4.0)) > 0.0)

def test_cox_errors():
    with pytest.raises(DegenerateCovariateError):
        cox_fit(SurvivalData([1, 2, 3], [1, 1, 0], np.ones((3, 1))))
    with pytest.raises(SeparationError):
        cox_fit(SurvivalData([1, 2], [1, 1], np.array([[1.0], [0.0]])))
    with pytest.raises(ValidationError):
        cox_fit(SurvivalData([1, 2], [0, 0], np.array([[1.0], [0.0]])))
    with pytest.raises(ValidationError):
        cox_fit(SurvivalData([1, 2], [1, 1], np.zeros((2, 0))))

def test_cox_recovers_group_effect(two_group_data):
    """Group 1 has twice the median, so half the hazard."""
    fit = cox_fit(two_group_data)
    assert fit.converged
    assert fit.beta[0] == pytest.approx(-np.log(2.0), abs=0.15)
    assert fit.feature_names == ("group",)

def test_breslow_examples():
    data = SurvivalData([5.0, 8.0], [True, False], np.array([[0.0], [1.0]]))
    fit = CoxFit(beta=np.zeros(1), converged=True)
    baseline = breslow_baseline(fit, data)
    assert baseline(5) == pytest.approx(0.5)

    fit = replace(fit, baseline=baseline)
    assert cox_predict(fit, np.array([[0.0], [3.0]]), 5) == pytest.approx([np.exp(-0.5)] * 2)
    assert cox_predict(fit, np.array([[1.0]]), 0) == pytest.approx([1.0])

def test_zero_beta_reduces_to_nelson_aalen():
    times = np.array([1.0, 2.0, 2.0, 4.0, 6.0])
    events = np.array([True, True, False, True, False])
    data = SurvivalData(times, events, np.arange(5.0).reshape(5, 1))
    fit = CoxFit(beta=np.zeros(1), converged=True)
    fit = replace(fit, baseline=breslow_baseline(fit, data))
    hazard = nelson_aalen(times, events)
    for t in [0.5, 1, 2, 3, 4, 7]:
        assert cox_predict(fit, np.array([[9.0]]), t)[0] == pytest.approx(np.exp(-hazard(t)))

def test_unconverged_fit_cannot_predict():
    fit = CoxFit(beta=np.zeros(1))
    data = SurvivalData([1.0], [True], [[0.0]])
    with pytest.raises(StateError):
        breslow_baseline(fit, data)
    with pytest.raises(StateError):
        cox_predict(fit, np.zeros((1, 1)), 1.0)

def test_cox_survival_curves(two_group_data):
    fit = cox_fit(two_group_data)
    grid = TimeGrid((100.0, 200.0, 400.0))
    curves = cox_survival_curves(fit, np.array([[0.0], [1.0]]), grid)
    assert curves.cum_surv[:, 1] == pytest.approx(cox_predict(fit, np.array([[0.0], [1.0]]), 200.0))
    assert np.allclose(np.cumprod(curves.cond_surv, axis=1), curves.cum_surv)
    assert np.all(curves.cum_surv[1] > curves.cum_surv[0])

def test_loglog_table(two_group_data):
    table = loglog_table(two_group_data, "group", [100.0, 300.0])
    assert list(table.columns) == ["level", "time", "n", "survival", "log_neg_log"]
    assert len(table) == 4
    assert table["n"].sum() == 2 * two_group_data.n_subjects
    row = table.iloc[0]
    assert row["log_neg_log"] == pytest.approx(np.log(-np.log(row["survival"])))

    # proportional hazards: the log(-log S) gap is about ln 2 at both times
    wide = table.pivot(index="time", columns="level", values="log_neg_log")
    gaps = (wide[0.0] - wide[1.0]).to_numpy()
    assert gaps == pytest.approx([np.log(2.0)] * 2, abs=0.25)

    continuous = SurvivalData(np.arange(1.0, 21.0), np.ones(20), np.arange(20.0).reshape(20, 1))
    with pytest.raises(ValidationError):
        loglog_table(continuous, "x0", [5.0])
    with pytest.raises(ValidationError):
        loglog_table(two_group_data, "age", [5.0])
