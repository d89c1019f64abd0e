"""Configuration models.

All settings are frozen pydantic models that reject unknown keys and can be
read from JSON files with `from_file`.

Example:
    ```python
    from survnet.config import GridSpec, TrainConfig

    config = TrainConfig.from_file("train.json").merged({"epochs": 200})
    grid = GridSpec(scheme="uniform", width=30, horizon=1095).build()
    ```

Path: survnet/config/__init__.py
"""

from .base import ConfigModel
from .schema import (
    FeaturePolicy,
    DatasetSchema
)
from .simulation import (
    GroupSpec,
    SimSpec
)
from .train import (
    DEFAULT_L2_CANDIDATES,
    LayerSpec,
    NetworkSpec,
    GridSpec,
    TrainConfig
)

__all__ = [
    'ConfigModel',
    'FeaturePolicy',
    'DatasetSchema',
    'GroupSpec',
    'SimSpec',
    'DEFAULT_L2_CANDIDATES',
    'LayerSpec',
    'NetworkSpec',
    'GridSpec',
    'TrainConfig'
]
