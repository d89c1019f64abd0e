"""Tests for RMSprop updates.

Path: tests/test_optim.py
"""

import math

import numpy as np
import pytest

from survnet.common.errors import ValidationError
from survnet.config.train import NetworkSpec, TrainConfig
from survnet.nnet.network import ModelParams
from survnet.nnet.optim import RMSpropState, rmsprop_step, rmsprop_update
from survnet.survival.timegrid import TimeGrid

@pytest.fixture
def values():
    return {"0.kernel": np.array([[0.5, -0.5]]), "0.bias": np.array([0.1, 0.2])}

def test_zero_gradient_keeps_values(values):
    grads = {k: np.zeros_like(v) for k, v in values.items()}
    new, state = rmsprop_update(values, grads, RMSpropState.zeros_like(values), 0.01, 0.9, 1e-8)
    for name in values:
        assert np.array_equal(new[name], values[name])
    assert state.steps == 1

def test_first_step_from_fresh_cache():
    values = {"w": np.array([1.0])}
    grads = {"w": np.array([1.0])}
    new, state = rmsprop_update(values, grads, RMSpropState.zeros_like(values), 0.01, 0.9, 1e-8)
    assert state.cache["w"][0] == pytest.approx(0.1)
    assert new["w"][0] - 1.0 == pytest.approx(-0.01 / (math.sqrt(0.1) + 1e-8))

def test_repeated_gradient_takes_smaller_steps():
    values = {"w": np.array([0.0])}
    grads = {"w": np.array([1.0])}
    state = RMSpropState.zeros_like(values)
    first, state = rmsprop_update(values, grads, state, 0.01, 0.9, 1e-8)
    second, state = rmsprop_update(first, grads, state, 0.01, 0.9, 1e-8)
    assert abs(second["w"][0] - first["w"][0]) < abs(first["w"][0])
    assert state.steps == 2

def test_inputs_are_not_modified(values):
    before = {k: v.copy() for k, v in values.items()}
    state = RMSpropState.zeros_like(values)
    grads = {k: np.ones_like(v) for k, v in values.items()}
    rmsprop_update(values, grads, state, 0.01, 0.9, 1e-8)
    assert all(np.array_equal(values[k], before[k]) for k in values)
    assert all(np.all(c == 0) for c in state.cache.values())

def test_mismatched_names_or_shapes(values):
    state = RMSpropState.zeros_like(values)
    with pytest.raises(ValidationError):
        rmsprop_update(values, {"0.kernel": np.zeros((1, 2))}, state, 0.01, 0.9, 1e-8)
    with pytest.raises(ValidationError):
        rmsprop_update(values, {"0.kernel": np.zeros((2, 1)), "0.bias": np.zeros(2)},
                       state, 0.01, 0.9, 1e-8)

def test_step_on_model_params():
    grid = TimeGrid((100.0, 200.0))
    params = ModelParams(
        layers=NetworkSpec().layers(1, grid.n), grid=grid,
        values={"0.kernel": np.zeros((1, 2)), "0.bias": np.zeros(2)}
    )
    grads = {"0.kernel": np.array([[1.0, -1.0]]), "0.bias": np.zeros(2)}
    config = TrainConfig(learning_rate=0.1)
    stepped, state = rmsprop_step(params, grads, RMSpropState.zeros_like(params.values), config)
    assert stepped.values["0.kernel"][0, 0] < 0 < stepped.values["0.kernel"][0, 1]
    assert stepped.grid == grid
    assert state.steps == 1
