"""Command runners and their convenience functions.

Each runner is configured up front, executed once and reports a
`RunnerResult`; the convenience functions build and run one in a single call.

Example:
    ```python
    from survnet.config import GridSpec
    from survnet.runners import evaluate_model, simulate_dataset, split_dataset, train_model

    simulate_dataset("sim.csv", preset="two-group", seed=1)
    split_dataset("sim.csv", "train.csv", "test.csv", seed=1)
    train_model("train.csv", "model.json", grid=GridSpec(horizon=1095))
    result = evaluate_model("model.json", "test.csv", "metrics.csv", cox_train="train.csv")
    ```

Path: survnet/runners/__init__.py
"""

from .data import (
    PRESETS,
    resolve_sim_spec,
    SimulateRunner,
    SplitRunner,
    PrepareSupportRunner,
    simulate_dataset,
    split_dataset,
    prepare_support_dataset
)
from .training import (
    TrainRunner,
    train_model
)
from .evaluation import (
    DEFAULT_EVAL_TIMES,
    DEFAULT_RANK_TIME,
    EvaluateRunner,
    PredictRunner,
    CalibrateRunner,
    evaluate_model,
    predict_survival,
    calibrate_model
)
from .benchmark import (
    benchmark_sizes,
    BenchmarkRunner,
    run_benchmark
)
from .diagnostics import (
    LoglogRunner,
    loglog_report
)

__all__ = [
    # Data
    'PRESETS',
    'resolve_sim_spec',
    'SimulateRunner',
    'SplitRunner',
    'PrepareSupportRunner',
    'simulate_dataset',
    'split_dataset',
    'prepare_support_dataset',

    # Training
    'TrainRunner',
    'train_model',

    # Evaluation
    'DEFAULT_EVAL_TIMES',
    'DEFAULT_RANK_TIME',
    'EvaluateRunner',
    'PredictRunner',
    'CalibrateRunner',
    'evaluate_model',
    'predict_survival',
    'calibrate_model',

    # Benchmark and diagnostics
    'benchmark_sizes',
    'BenchmarkRunner',
    'run_benchmark',
    'LoglogRunner',
    'loglog_report'
]
