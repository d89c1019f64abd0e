"""survnet - Discrete-time survival modelling with feed-forward neural networks.

Follow-up time is cut into a fixed grid of intervals and a network predicts,
for every subject, the conditional probability of surviving each interval.
Training maximizes the censored-data likelihood of the interval outcomes, so
censoring and time-varying effects are handled without extra machinery.

Core Features:
- Flexible output head (non-proportional hazards) and a proportional-hazards head
- Uniform, half-life and explicit interval grids
- RMSprop training with L2 selection by cross-validation
- Kaplan-Meier, Nelson-Aalen and Cox comparators
- C-index, censoring-weighted Brier score and decile calibration
- Synthetic cohorts, dataset ingestion and a JSON model format

The package is organized into several modules:
- survival: data containers, grids, likelihood, baselines and metrics
- nnet: networks, optimizer and training loop
- io: datasets, model files and result tables
- runners: command implementations used by the CLI
- config: pydantic settings models
- common: errors, enums and the runner base class

Example:
    ```python
    from survnet import (
        GridSpec, NetworkSpec, TrainConfig, SimSpec,
        simulate, train, predict, survival_at
    )

    data = simulate(SimSpec.two_group_exponential(n_subjects=2000, rng_seed=3))
    grid = GridSpec(scheme="uniform", width=73, horizon=1095).build()
    result = train(data, grid, NetworkSpec(head="prophaz"), TrainConfig(epochs=300))
    curves = predict(result.params, data.covariates[:5])
    print(survival_at(curves, grid, 365))
    ```

Path: survnet/__init__.py
"""

# Version information
__version__ = '0.1.0'

from .common import (
    # Enums
    HeadKind,
    GridScheme,
    MissingPolicy,
    Distribution,

    # Errors
    ErrorCategory,
    ErrorCode,
    SurvnetError,
    ValidationError,
    ConfigError,
    FileError,
    DataError,
    ModelFormatError,
    ModelVersionError,
    NumericalError,
    TrainingDivergedError,
    SeparationError,
    UndefinedMetricError,
    OutOfHorizonError,

    # Runner base
    RunnerResult
)

from .config import (
    DatasetSchema,
    SimSpec,
    NetworkSpec,
    GridSpec,
    TrainConfig
)

from .survival import (
    SurvivalData,
    TimeGrid,
    SurvivalCurve,
    encode_batch,
    simulate,
    kaplan_meier,
    nelson_aalen,
    cox_fit,
    c_index,
    brier_censored,
    calibration_table
)

from .nnet import (
    ModelParams,
    train,
    select_l2,
    predict,
    survival_at,
    median_survival
)

from .io import (
    load_dataset,
    split,
    save_model,
    load_model
)

__all__ = [
    # Enums
    'HeadKind',
    'GridScheme',
    'MissingPolicy',
    'Distribution',

    # Errors
    'ErrorCategory',
    'ErrorCode',
    'SurvnetError',
    'ValidationError',
    'ConfigError',
    'FileError',
    'DataError',
    'ModelFormatError',
    'ModelVersionError',
    'NumericalError',
    'TrainingDivergedError',
    'SeparationError',
    'UndefinedMetricError',
    'OutOfHorizonError',
    'RunnerResult',

    # Configuration
    'DatasetSchema',
    'SimSpec',
    'NetworkSpec',
    'GridSpec',
    'TrainConfig',

    # Survival
    'SurvivalData',
    'TimeGrid',
    'SurvivalCurve',
    'encode_batch',
    'simulate',
    'kaplan_meier',
    'nelson_aalen',
    'cox_fit',
    'c_index',
    'brier_censored',
    'calibration_table',

    # Networks
    'ModelParams',
    'train',
    'select_l2',
    'predict',
    'survival_at',
    'median_survival',

    # IO
    'load_dataset',
    'split',
    'save_model',
    'load_model'
]
