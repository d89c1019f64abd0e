"""Tests for the command runners.

Path: tests/test_runners.py
"""

import tracemalloc

import numpy as np
import pandas as pd
import pytest

from survnet.common.base import RunnerState
from survnet.common.errors import StateError, ValidationError
from survnet.config.schema import DatasetSchema
from survnet.config.simulation import SimSpec
from survnet.config.train import GridSpec, TrainConfig
from survnet.io.dataset import load_dataset, write_dataset
from survnet.io.model_store import load_model, read_model
from survnet.nnet.network import median_survival, predict, survival_at
from survnet.nnet.trainer import train
from survnet.runners import (
    BenchmarkRunner,
    CalibrateRunner,
    EvaluateRunner,
    LoglogRunner,
    PredictRunner,
    PrepareSupportRunner,
    SimulateRunner,
    SplitRunner,
    TrainRunner,
    benchmark_sizes,
    resolve_sim_spec,
    simulate_dataset,
)
from survnet.runners import benchmark as benchmark_module
from survnet.survival.baselines import cox_fit, cox_predict, cox_survival_curves, kaplan_meier
from survnet.survival.datagen import simulate
from survnet.survival.metrics import brier_censored, c_index
from tests.test_io import SUPPORT_HEADER, support_row

QUICK = TrainConfig(epochs=3, batch_size=128, learning_rate=0.01)
GRID = GridSpec(scheme="uniform", width=100, horizon=1100)

@pytest.fixture
def cohort_files(temp_dir):
    """Simulated two-group cohort split into training and test files."""
    source = temp_dir / "sim.csv"
    assert simulate_dataset(source, n_subjects=1000, seed=3).success
    train_path, test_path = temp_dir / "train.csv", temp_dir / "test.csv"
    result = SplitRunner(source, train_path, test_path, train_fraction=0.7, seed=3).run()
    assert result.success
    return source, train_path, test_path

@pytest.fixture
def model_file(temp_dir, cohort_files):
    """Model trained for a few epochs on the training file."""
    _, train_path, _ = cohort_files
    model = temp_dir / "model.json"
    result = TrainRunner(train_path, model, GRID, config=QUICK).run()
    assert result.success, result.errors
    return model

def test_simulate_runner(temp_dir):
    spec = SimSpec.two_group_exponential(n_subjects=200, rng_seed=1)
    runner = SimulateRunner(spec, temp_dir / "out" / "sim.csv")
    result = runner.run()

    assert result.success and result.exit_code == 0
    assert result.summary["subjects"] == 200
    assert result.outputs == [temp_dir / "out" / "sim.csv"]
    frame = pd.read_csv(result.outputs[0])
    assert list(frame.columns) == ["time", "event", "group"]
    assert runner.state == RunnerState.COMPLETED

def test_resolve_sim_spec(temp_dir):
    spec = resolve_sim_spec("interval-width", n_subjects=50, seed=9)
    assert (spec.n_subjects, spec.rng_seed, spec.max_followup) == (50, 9, 1095.0)

    path = temp_dir / "design.json"
    path.write_text(SimSpec.two_group_exponential(n_subjects=10).model_dump_json(), encoding="utf-8")
    assert resolve_sim_spec(config_path=path).n_subjects == 10

    with pytest.raises(ValidationError):
        resolve_sim_spec("no-such-preset")
    with pytest.raises(ValidationError):
        resolve_sim_spec()
    with pytest.raises(ValidationError):
        resolve_sim_spec("two-group", path)

def test_runner_lifecycle(temp_dir):
    runner = SimulateRunner(SimSpec.two_group_exponential(n_subjects=10), temp_dir / "sim.csv")
    with pytest.raises(StateError):
        runner.write()
    runner.execute()
    with pytest.raises(StateError):
        runner.execute()
    assert runner.write() == [temp_dir / "sim.csv"]
    assert "completed" in repr(runner)

def test_split_runner(cohort_files):
    source, train_path, test_path = cohort_files
    train_data, _ = load_dataset(train_path)
    test_data, _ = load_dataset(test_path)
    assert (train_data.n_subjects, test_data.n_subjects) == (700, 300)
    assert train_data.feature_names == ("group",)

    full, _ = load_dataset(source)
    assert sorted(np.r_[train_data.times, test_data.times]) == sorted(full.times)

def test_train_runner(temp_dir, cohort_files, model_file):
    params, metadata = read_model(model_file)
    assert params.grid.n == 11
    assert params.feature_names == ("group",)
    assert metadata["training_subjects"] == 700
    assert metadata["train_config"]["epochs"] == 3

    losses = pd.read_csv(model_file.with_suffix(".loss.csv"))
    assert losses["epoch"].tolist() == [1, 2, 3]
    assert losses["loss"].iloc[-1] == pytest.approx(metadata["final_loss"])

def test_train_runner_with_l2_selection(temp_dir, cohort_files):
    _, train_path, _ = cohort_files
    model = temp_dir / "cv.json"
    runner = TrainRunner(train_path, model, GRID, config=QUICK, l2_candidates=[0.0, 0.1], folds=3)
    result = runner.run()

    assert result.success, result.errors
    assert result.summary["l2_strength"] == runner.selection.l2_strength
    scores = pd.read_csv(model.with_suffix(".cv.csv"))
    assert scores["l2_strength"].tolist() == [0.0, 0.1]
    _, metadata = read_model(model)
    assert set(metadata["l2_scores"]) == {"0", "0.1"}

def test_train_runner_warm_start(temp_dir, cohort_files, model_file):
    _, train_path, _ = cohort_files
    resumed = temp_dir / "resumed.json"
    other_grid = GridSpec(scheme="uniform", width=50, horizon=200)
    result = TrainRunner(train_path, resumed, other_grid, config=QUICK, warm_start=model_file).run()

    assert result.success, result.errors
    # the grid comes from the starting model
    assert load_model(resumed).grid == load_model(model_file).grid

def test_train_runner_reports_missing_file(temp_dir):
    result = TrainRunner(temp_dir / "absent.csv", temp_dir / "model.json", GRID).run()
    assert not result.success
    assert result.exit_code == 2
    assert not (temp_dir / "model.json").exists()

def test_evaluate_runner(temp_dir, cohort_files, model_file):
    _, train_path, test_path = cohort_files
    output = temp_dir / "metrics.csv"
    result = EvaluateRunner(model_file, test_path, output, cox_train=train_path).run()

    assert result.success, result.errors
    metrics = pd.read_csv(output)
    assert set(metrics["model"]) == {"survnet", "cox"}
    brier = metrics[(metrics["metric"] == "brier") & (metrics["model"] == "survnet")]
    assert brier["label"].tolist() == ["6 months", "1 year", "3 years"]
    assert metrics["value"].between(0, 1).all()
    assert "survnet c_index (1 year)" in result.summary
    assert "group" in result.summary["cox beta"]

    calibration = pd.read_csv(temp_dir / "metrics.calibration.csv")
    assert sorted(calibration["time"].unique()) == [182.0, 365.0, 1095.0]

def test_evaluate_skips_times_past_horizon(temp_dir, cohort_files, model_file):
    _, _, test_path = cohort_files
    output = temp_dir / "metrics.csv"
    result = EvaluateRunner(model_file, test_path, output, times=[365.0, 5000.0]).run()

    assert result.success
    assert any("5000" in w for w in result.warnings)
    assert pd.read_csv(output)["time"].max() == 365.0

def test_evaluate_skips_c_index_past_horizon(temp_dir, cohort_files, model_file):
    _, train_path, test_path = cohort_files
    output = temp_dir / "metrics.csv"
    result = EvaluateRunner(model_file, test_path, output, rank_time=5000.0, cox_train=train_path).run()

    assert result.success, result.errors
    assert result.exit_code == 0
    assert any("C-index at 5000" in w for w in result.warnings)
    metrics = pd.read_csv(output)
    assert "c_index" not in set(metrics["metric"])
    assert len(metrics[metrics["metric"] == "brier"]) == 6

def test_evaluate_scores_cox_on_the_model_grid(temp_dir, cohort_files, model_file):
    _, train_path, test_path = cohort_files
    output = temp_dir / "metrics.csv"
    result = EvaluateRunner(model_file, test_path, output, times=[300.0, 365.0],
                            cox_train=train_path).run()
    assert result.success, result.errors

    fit = cox_fit(load_dataset(train_path)[0])
    test_data, _ = load_dataset(test_path)
    grid = load_model(model_file).grid
    curves = cox_survival_curves(fit, test_data.covariates, grid)
    # at a boundary the grid curve is the Breslow step prediction
    assert curves.cum_surv[:, 2] == pytest.approx(cox_predict(fit, test_data.covariates, 300.0))

    at_year = survival_at(curves, grid, 365.0)
    cox = pd.read_csv(output).query("model == 'cox'").set_index(["metric", "time"])["value"]
    assert cox[("brier", 365.0)] == pytest.approx(
        brier_censored(at_year, test_data.times, test_data.events, 365.0))
    assert cox[("c_index", 365.0)] == pytest.approx(
        c_index(1.0 - at_year, test_data.times, test_data.events))

def test_predict_runner(temp_dir, cohort_files, model_file):
    _, _, test_path = cohort_files
    result = PredictRunner(model_file, test_path, temp_dir / "curves.csv").run()
    assert result.success
    curves = pd.read_csv(temp_dir / "curves.csv")
    assert len(curves) == 300
    assert list(curves.columns[:3]) == ["subject", "S_100", "S_200"]
    values = curves.drop(columns="subject").to_numpy()
    assert np.all(np.diff(values, axis=1) <= 1e-12)

    covariates = temp_dir / "new.csv"
    pd.DataFrame({"group": [0.0, 1.0]}).to_csv(covariates, index=False)
    result = PredictRunner(model_file, covariates, temp_dir / "at.csv", times=[50, 365]).run()
    assert result.success, result.errors
    assert list(pd.read_csv(temp_dir / "at.csv").columns) == ["subject", "S_50", "S_365"]

def test_calibrate_runner(temp_dir, cohort_files, model_file):
    _, _, test_path = cohort_files
    result = CalibrateRunner(model_file, test_path, temp_dir / "cal.csv", time=365, groups=5).run()
    assert result.success
    table = pd.read_csv(temp_dir / "cal.csv")
    assert table["n"].sum() == 300
    assert result.summary["groups"] == 5

    late = CalibrateRunner(model_file, test_path, temp_dir / "late.csv", time=5000).run()
    assert not late.success
    assert late.exit_code == 4

def test_benchmark_sizes():
    assert benchmark_sizes(1000) == [1000]
    assert benchmark_sizes(10_000) == [1000, 3162, 10_000]
    assert benchmark_sizes(5000) == [1000, 3162]
    with pytest.raises(ValidationError):
        benchmark_sizes(999)

def test_benchmark_runner(temp_dir, two_group_data):
    config = TrainConfig(epochs=1, batch_size=500)
    runner = BenchmarkRunner(two_group_data, temp_dir / "bench.csv", 1000, GRID,
                             config=config, repetitions=2)
    result = runner.run()

    assert result.success, result.errors
    table = pd.read_csv(temp_dir / "bench.csv")
    assert table["size"].tolist() == [1000]
    assert table["repetitions"].tolist() == [2]
    assert (table["mean_seconds"] > 0).all()
    assert "time_slope" not in result.summary

    with pytest.raises(ValidationError):
        BenchmarkRunner(two_group_data, temp_dir / "bench.csv", 1000, GRID, repetitions=0)

def test_benchmark_times_runs_without_tracing(temp_dir, two_group_data, monkeypatch):
    traced = []

    def recording_train(*args, **kwargs):
        traced.append(tracemalloc.is_tracing())
        return train(*args, **kwargs)

    monkeypatch.setattr(benchmark_module, "train", recording_train)
    config = TrainConfig(epochs=1, batch_size=500)
    result = BenchmarkRunner(two_group_data, temp_dir / "bench.csv", 1000, GRID,
                             config=config, repetitions=3).run()

    assert result.success, result.errors
    # three timed runs, then one traced run for the memory peak
    assert traced == [False, False, False, True]
    assert not tracemalloc.is_tracing()
    assert (pd.read_csv(temp_dir / "bench.csv")["peak_memory_mb"] > 0).all()

def test_loglog_runner(temp_dir, cohort_files):
    source, _, _ = cohort_files
    result = LoglogRunner(source, "group", temp_dir / "ll.csv", times=[100, 300]).run()
    assert result.success
    assert result.summary["levels"] == 2
    assert len(pd.read_csv(temp_dir / "ll.csv")) == 4

    default_times = LoglogRunner(source, "group", temp_dir / "ll20.csv").run()
    assert default_times.summary["times"] == 20

    unknown = LoglogRunner(source, "age", temp_dir / "bad.csv").run()
    assert not unknown.success and unknown.exit_code == 3

def test_prepare_support_runner(temp_dir):
    raw = temp_dir / "support2.csv"
    rows = [support_row(**{"d.time": str(t), "death": str(t % 2)}) for t in range(10, 30)]
    pd.DataFrame(rows, columns=SUPPORT_HEADER).to_csv(raw, index=False)

    result = PrepareSupportRunner(raw, temp_dir / "support.csv").run()
    assert result.success, result.errors
    schema_path = temp_dir / "support.schema.json"
    assert result.outputs == [temp_dir / "support.csv", schema_path]

    schema = DatasetSchema.from_file(schema_path)
    data, _ = load_dataset(temp_dir / "support.csv", schema)
    assert data.n_subjects == 20
    assert len(data.feature_names) == result.summary["covariates"]

@pytest.fixture(scope="module")
def two_group_model(tmp_path_factory):
    """Cohort of 5,000 with medians of 200 and 400 days, and a model trained on it."""
    folder = tmp_path_factory.mktemp("two_group")
    data = simulate(SimSpec.two_group_exponential(n_subjects=5000, rng_seed=1))
    path = write_dataset(data, folder / "sim.csv")
    model = folder / "model.json"
    grid = GridSpec(scheme="uniform", width=30, horizon=900)
    config = TrainConfig(epochs=100, batch_size=256, learning_rate=0.005)
    result = TrainRunner(path, model, grid, config=config).run()
    assert result.success, result.errors
    return data, load_model(model)

@pytest.mark.slow
def test_two_group_medians_are_recovered(two_group_model):
    _, params = two_group_model
    medians = median_survival(predict(params, np.array([[0.0], [1.0]])), params.grid)
    assert medians == pytest.approx([200.0, 400.0], rel=0.1)

@pytest.mark.slow
def test_two_group_predictions_follow_kaplan_meier(two_group_model):
    """Group-averaged predicted survival stays within 0.03 of each group's KM curve."""
    data, params = two_group_model
    curves = predict(params, data.covariates)
    times = np.linspace(60.0, 600.0, 10)
    predicted = np.column_stack([survival_at(curves, params.grid, t) for t in times])
    group = data.feature("group")
    for level in (0.0, 1.0):
        members = group == level
        km = kaplan_meier(data.times[members], data.events[members])
        gap = np.mean(np.abs(predicted[members].mean(axis=0) - km(times)))
        assert gap < 0.03, (level, gap)
