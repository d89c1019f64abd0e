"""Tests for survival curves and the discrete-time likelihood.

Path: tests/test_likelihood.py
"""

import math

import numpy as np
import pytest

from survnet.common.errors import ValidationError
from survnet.survival.likelihood import (
    EPSILON,
    batch_loss,
    brown_loss,
    interval_loglik,
    loglik,
    loss_grad,
    null_hazards,
    risk_table,
    survival_curve,
)
from survnet.survival.timegrid import EncodedTarget, TimeGrid, encode_batch

def target(surv_s, surv_f) -> EncodedTarget:
    return EncodedTarget(np.asarray(surv_s, dtype=float), np.asarray(surv_f, dtype=float))

def sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))

def test_survival_curve():
    near_one = survival_curve([1 - EPSILON, 1 - EPSILON])
    assert near_one.cum_surv == pytest.approx([1.0, 1.0], abs=1e-6)

    curve = survival_curve([0.9, 0.8])
    assert curve.cum_surv == pytest.approx([0.9, 0.72])
    assert curve.hazards == pytest.approx([0.1, 0.2])

    assert survival_curve([0.5]).cum_surv.tolist() == [0.5]

    clamped = survival_curve([0.0, 1.0])
    assert clamped.cond_surv.tolist() == [EPSILON, 1 - EPSILON]

    with pytest.raises(ValidationError):
        survival_curve([])

def test_loglik_examples():
    certain = survival_curve([1 - EPSILON, 1 - EPSILON])
    assert loglik(certain, target([1, 1], [0, 0])) == pytest.approx(0.0, abs=1e-6)

    half = survival_curve([0.5, 0.5])
    assert loglik(half, target([1, 0], [0, 1])) == pytest.approx(2 * math.log(0.5), abs=1e-12)
    assert loglik(half, target([0, 0], [0, 0])) == 0.0

    with pytest.raises(ValidationError):
        loglik(half, target([1, 0, 0], [0, 0, 0]))

def test_loglik_matches_direct_products():
    """Vectorized form equals the product of interval probabilities."""
    rng = np.random.default_rng(13)
    for _ in range(1000):
        n = int(rng.integers(1, 12))
        cond = rng.uniform(0.01, 0.99, size=n)
        curve = survival_curve(cond)
        hazards = 1.0 - cond
        if rng.random() < 0.5:
            j = int(rng.integers(0, n))
            s = np.r_[np.ones(j), np.zeros(n - j)]
            f = np.zeros(n)
            f[j] = 1.0
            direct = np.sum(np.log(cond[:j])) + math.log(hazards[j])
        else:
            k = int(rng.integers(0, n + 1))
            s = np.r_[np.ones(k), np.zeros(n - k)]
            f = np.zeros(n)
            direct = np.sum(np.log(cond[:k]))
        assert abs(loglik(curve, target(s, f)) - direct) < 1e-12

def test_batch_loss():
    half = survival_curve([[0.5, 0.5]])
    one = target([[1, 0]], [[0, 1]])
    assert batch_loss(half, one) == pytest.approx(-2 * math.log(0.5))

    two = survival_curve([[0.5, 0.5], [0.5, 0.5]])
    both = target([[1, 0], [1, 0]], [[0, 1], [0, 1]])
    assert batch_loss(two, both) == pytest.approx(batch_loss(half, one))

    certain = survival_curve(np.full((3, 2), 1 - EPSILON))
    assert batch_loss(certain, target(np.ones((3, 2)), np.zeros((3, 2)))) == pytest.approx(0.0, abs=1e-6)

    with pytest.raises(ValidationError):
        batch_loss(survival_curve(np.ones((2, 2)) * 0.5), target(np.ones((3, 2)), np.zeros((3, 2))))

def test_loss_grad_examples():
    assert loss_grad(survival_curve([0.5]), target([0], [0])).tolist() == [0.0]
    assert loss_grad(survival_curve([0.5]), target([1], [0])) == pytest.approx([-2.0])
    assert loss_grad(survival_curve([0.5]), target([0], [1])) == pytest.approx([2.0])

def test_loss_grad_finite_differences():
    rng = np.random.default_rng(17)
    step = 1e-6
    for _ in range(200):
        n = int(rng.integers(1, 8))
        cond = rng.uniform(0.05, 0.95, size=n)
        j = int(rng.integers(0, n))
        event = rng.random() < 0.5
        s = np.r_[np.ones(j), np.zeros(n - j)]
        f = np.zeros(n)
        if event:
            f[j] = 1.0
        t = target(s, f)
        analytic = loss_grad(survival_curve(cond), t)
        for i in range(n):
            up, down = cond.copy(), cond.copy()
            up[i] += step
            down[i] -= step
            numeric = -(loglik(survival_curve(up), t) - loglik(survival_curve(down), t)) / (2 * step)
            scale = max(abs(numeric), abs(analytic[i]), 1e-8)
            assert abs(numeric - analytic[i]) / scale < 1e-5 or abs(numeric - analytic[i]) < 1e-8

def test_brown_loss_examples():
    tiny = survival_curve(np.full((2, 3), 1 - EPSILON))
    assert brown_loss(tiny, target(np.ones((2, 3)), np.zeros((2, 3)))) == pytest.approx(0.0, abs=1e-12)

    half = survival_curve([[0.5]])
    assert brown_loss(half, target([[0]], [[1]])) == pytest.approx(0.125)

    pair = survival_curve([[0.5], [0.5]])
    assert brown_loss(pair, target([[0], [1]], [[1], [0]])) == pytest.approx(0.25)

def test_brown_loss_minimizer_differs():
    """With h = sigmoid(w * x), squared error and likelihood pick different w.

    Subject one (x=1) fails in the single interval, subject two (x=2)
    survives it.
    """
    x = np.array([1.0, 2.0])
    t = target([[0], [1]], [[1], [0]])
    ws = np.arange(-2.0, 1.0, 1e-3)

    def curves(w):
        return survival_curve((1.0 - sigmoid(w * x))[:, None])

    w_lik = ws[np.argmin([batch_loss(curves(w), t) for w in ws])]
    w_brown = ws[np.argmin([brown_loss(curves(w), t) for w in ws])]
    gap = np.max(np.abs(sigmoid(w_lik * x) - sigmoid(w_brown * x)))
    assert gap > 1e-2

def test_risk_table_and_null_hazards():
    grid = TimeGrid((100.0, 200.0, 300.0))
    times = np.array([50.0, 150.0, 150.0, 250.0, 20.0])
    events = np.array([True, True, False, False, False])
    targets = encode_batch(times, events, grid)

    deaths, at_risk = risk_table(targets)
    assert deaths.tolist() == [1, 1, 0]
    # the 250-day censoring is credited through interval 3's midpoint
    assert at_risk.tolist() == [4, 3, 1]
    assert null_hazards(targets) == pytest.approx([0.25, 1 / 3, 0.0])

def test_null_hazards_maximize_likelihood():
    """Grid search over each interval's hazard lands on d_j / r_j."""
    rng = np.random.default_rng(3)
    grid = TimeGrid((100.0, 200.0, 300.0, 400.0))
    times = rng.exponential(250, size=300)
    events = rng.random(300) < 0.7
    targets = encode_batch(times, events, grid)
    deaths, at_risk = risk_table(targets)
    expected = null_hazards(targets)

    candidates = np.linspace(1e-4, 1 - 1e-4, 10001)
    for j in range(grid.n):
        values = [interval_loglik([h], [deaths[j]], [at_risk[j]]) for h in candidates]
        best = candidates[int(np.argmax(values))]
        assert abs(best - expected[j]) <= 1e-4

    # the interval form and the encoded form agree
    curves = survival_curve(np.tile(1.0 - expected, (300, 1)))
    assert interval_loglik(expected, deaths, at_risk) == pytest.approx(
        float(np.sum(loglik(curves, targets))), rel=1e-10
    )
