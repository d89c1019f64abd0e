"""Helpers shared by the command runners.

Path: survnet/runners/_shared.py
"""
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from survnet.common.enums import MissingPolicy
from survnet.config.schema import DatasetSchema, FeaturePolicy
from survnet.io.dataset import IngestionReport, load_dataset
from survnet.nnet.network import ModelParams
from survnet.survival.data import SurvivalData

logger = logging.getLogger(__name__)

def read_schema(path: Optional[Path | str], **overrides: Any) -> DatasetSchema:
    """Schema from a JSON file (or the default) with non-None overrides."""
    schema = DatasetSchema.from_file(path) if path is not None else DatasetSchema()
    return schema.merged(overrides)

def model_schema(
    params: ModelParams,
    metadata: Optional[Dict[str, Any]] = None,
    time_column: str = "time",
    event_column: str = "event"
) -> DatasetSchema:
    """Schema reading exactly the model's covariates.

    Missing cells are filled with the values used when the model was
    trained, falling back to the median of the file being read.
    """
    fills = (metadata or {}).get("fill_values", {})
    features = [
        FeaturePolicy(name=name, missing=MissingPolicy.DEFAULT, default=fills[name])
        if name in fills else FeaturePolicy(name=name)
        for name in params.feature_names
    ]
    return DatasetSchema(time_column=time_column, event_column=event_column, features=features)

def load_for_model(
    path: Path | str,
    params: ModelParams,
    metadata: Optional[Dict[str, Any]] = None,
    *,
    time_column: str = "time",
    event_column: str = "event",
    outcomes: bool = True
) -> Tuple[SurvivalData, IngestionReport]:
    """Load a cohort with the covariates a model expects."""
    schema = model_schema(params, metadata, time_column, event_column)
    return load_dataset(path, schema, outcomes=outcomes)
