"""Shared building blocks: runner lifecycle, errors, enums and training tracking.

Example:
    ```python
    from survnet.common import BaseRunner, SurvnetError

    try:
        result = SomeRunner(...).run()
    except SurvnetError as e:
        print(e.exit_code, e.message)
    ```

Path: survnet/common/__init__.py
"""

from .base import (
    RunnerState,
    RunnerResult,
    BaseRunner,
    ensure_parent,
    optional_path
)
from .enums import (
    HeadKind,
    LayerKind,
    Activation,
    GridScheme,
    MissingPolicy,
    Distribution
)
from .errors import (
    ErrorCategory,
    ErrorCode,
    ErrorContext,
    SurvnetError,
    ValidationError,
    ConfigError,
    FileError,
    StateError,
    DataError,
    ModelFormatError,
    ModelVersionError,
    NumericalError,
    TrainingDivergedError,
    SeparationError,
    DegenerateCovariateError,
    UndefinedMetricError,
    OutOfHorizonError
)
from .tracking import (
    TrackerState,
    EpochRecord,
    TrackerStats,
    TrainingTracker
)

__all__ = [
    # Base runner
    'RunnerState',
    'RunnerResult',
    'BaseRunner',
    'ensure_parent',
    'optional_path',

    # Enums
    'HeadKind',
    'LayerKind',
    'Activation',
    'GridScheme',
    'MissingPolicy',
    'Distribution',

    # Errors
    'ErrorCategory',
    'ErrorCode',
    'ErrorContext',
    'SurvnetError',
    'ValidationError',
    'ConfigError',
    'FileError',
    'StateError',
    'DataError',
    'ModelFormatError',
    'ModelVersionError',
    'NumericalError',
    'TrainingDivergedError',
    'SeparationError',
    'DegenerateCovariateError',
    'UndefinedMetricError',
    'OutOfHorizonError',

    # Tracking
    'TrackerState',
    'EpochRecord',
    'TrackerStats',
    'TrainingTracker'
]
