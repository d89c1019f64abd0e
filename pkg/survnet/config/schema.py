"""Dataset schemas for delimited survival files.

A schema names the follow-up time and event columns, lists the covariates
with their missing-value policy, and sets the missing-fraction above which a
covariate is dropped instead of imputed.

Example schema file:
    ```json
    {
        "time_column": "d.time",
        "event_column": "death",
        "drop_threshold": 0.4,
        "features": [
            {"name": "age"},
            {"name": "alb", "missing": "default", "default": 3.5}
        ]
    }
    ```

Path: survnet/config/schema.py
"""
from typing import Dict, List, Optional

from pydantic import Field, field_validator, model_validator

from survnet.common.enums import MissingPolicy
from survnet.config.base import ConfigModel

class FeaturePolicy(ConfigModel):
    """How one covariate column is read.

    Attributes:
        name: Column name in the file header
        missing: Imputation policy for missing cells
        default: Fill value for the default policy
    """
    name: str = Field(min_length=1)
    missing: MissingPolicy = MissingPolicy.MEDIAN
    default: Optional[float] = None

    @model_validator(mode="after")
    def check_default(self) -> "FeaturePolicy":
        if self.missing == MissingPolicy.DEFAULT and self.default is None:
            raise ValueError(f"feature {self.name!r} uses the default policy without a default value")
        return self

class DatasetSchema(ConfigModel):
    """Column roles and missing-value handling of a dataset.

    Attributes:
        time_column: Follow-up time in days
        event_column: Event indicator (0 or 1)
        features: Covariates in order; None uses every other column with
            the median policy
        drop_threshold: Drop a covariate when more than this fraction of
            its cells is missing (None never drops)
        missing_values: Cell contents read as missing
        delimiter: Field separator
    """
    time_column: str = "time"
    event_column: str = "event"
    features: Optional[List[FeaturePolicy]] = None
    drop_threshold: Optional[float] = Field(default=None, ge=0, le=1)
    missing_values: List[str] = Field(default_factory=lambda: ["?", ""])
    delimiter: str = ","

    @field_validator("features")
    @classmethod
    def unique_features(cls, v: Optional[List[FeaturePolicy]]) -> Optional[List[FeaturePolicy]]:
        if v is not None:
            names = [f.name for f in v]
            duplicates = sorted({n for n in names if names.count(n) > 1})
            if duplicates:
                raise ValueError(f"features listed more than once: {duplicates}")
        return v

    @model_validator(mode="after")
    def check_roles(self) -> "DatasetSchema":
        if self.time_column == self.event_column:
            raise ValueError("time and event must be different columns")
        if self.features is not None:
            clash = {f.name for f in self.features} & {self.time_column, self.event_column}
            if clash:
                raise ValueError(f"outcome columns cannot be features: {sorted(clash)}")
        return self

    def policies(self, columns: List[str]) -> Dict[str, FeaturePolicy]:
        """Policy per covariate for a file with the given header."""
        if self.features is not None:
            return {f.name: f for f in self.features}
        return {
            name: FeaturePolicy(name=name)
            for name in columns
            if name not in (self.time_column, self.event_column)
        }
