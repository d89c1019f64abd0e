"""Reading, writing and splitting delimited survival datasets.

Files are UTF-8, comma-separated by default, with a header row. Cells listed
in the schema's missing values ('?' and empty by default) are missing.
Outcome columns must be complete; covariates are imputed or dropped per the
schema and every decision is recorded in an `IngestionReport`.

Path: survnet/io/dataset.py
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from survnet.common.base import ensure_parent
from survnet.common.enums import MissingPolicy
from survnet.common.errors import (
    DataError, FileError, ValidationError, ErrorCode, ErrorContext
)
from survnet.config.schema import DatasetSchema
from survnet.survival.data import SurvivalData
from survnet.utils.rng import make_rng

logger = logging.getLogger(__name__)

@dataclass
class IngestionReport:
    """What loading did to the raw file.

    Attributes:
        path: Source file
        rows: Number of data rows
        features: Covariates kept, in order
        imputed: Missing cells filled per covariate
        fill_values: Value used for filling per covariate
        dropped: Missing fraction of each dropped covariate
    """
    path: Optional[Path] = None
    rows: int = 0
    features: List[str] = field(default_factory=list)
    imputed: Dict[str, int] = field(default_factory=dict)
    fill_values: Dict[str, float] = field(default_factory=dict)
    dropped: Dict[str, float] = field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        """One row per covariate seen in the file."""
        rows = [
            {"feature": name, "status": "kept", "imputed": self.imputed.get(name, 0),
             "fill_value": self.fill_values.get(name), "missing_fraction": None}
            for name in self.features
        ]
        rows.extend(
            {"feature": name, "status": "dropped", "imputed": 0,
             "fill_value": None, "missing_fraction": fraction}
            for name, fraction in self.dropped.items()
        )
        return pd.DataFrame(rows, columns=["feature", "status", "imputed", "fill_value", "missing_fraction"])

def _read_raw(path: Path, schema: DatasetSchema) -> pd.DataFrame:
    try:
        return pd.read_csv(
            path, sep=schema.delimiter, dtype=str, keep_default_na=False,
            na_filter=False, encoding="utf-8"
        )
    except FileNotFoundError as e:
        context = ErrorContext(operation="load_dataset", error_code=ErrorCode.FILE_NOT_FOUND, path=path)
        raise FileError("Dataset file not found", path=path, context=context, original_error=e) from e
    except OSError as e:
        context = ErrorContext(operation="load_dataset", error_code=ErrorCode.FILE_READ, path=path)
        raise FileError("Failed to read dataset file", path=path, context=context, original_error=e) from e
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        context = ErrorContext(operation="load_dataset", error_code=ErrorCode.DATA_PARSE, path=path)
        raise DataError(f"Failed to parse dataset file: {e}", context=context, original_error=e) from e

def _numeric_column(raw: pd.Series, name: str, missing_values: List[str]) -> pd.Series:
    """Parse a column to floats with NaN for missing cells.

    Raises:
        DataError: At the first cell that is neither missing nor a number
    """
    text = raw.str.strip()
    missing = text.isin(missing_values)
    values = pd.to_numeric(text.where(~missing), errors="coerce")
    bad = values.isna() & ~missing
    if bad.any():
        position = int(np.flatnonzero(bad.to_numpy())[0])
        context = ErrorContext(
            operation="load_dataset",
            error_code=ErrorCode.DATA_PARSE,
            details={"value": text.iloc[position]}
        )
        raise DataError("Cell is not a number", row=position + 1, column=name, context=context)
    return values.astype(float)

def _first_row(mask: pd.Series) -> int:
    return int(np.flatnonzero(mask.to_numpy())[0]) + 1

def _outcome_columns(raw: pd.DataFrame, schema: DatasetSchema) -> Tuple[pd.Series, pd.Series]:
    """Parse and check the time and event columns."""
    times = _numeric_column(raw[schema.time_column], schema.time_column, schema.missing_values)
    events = _numeric_column(raw[schema.event_column], schema.event_column, schema.missing_values)
    for name, values in ((schema.time_column, times), (schema.event_column, events)):
        if values.isna().any():
            raise DataError("Outcome values cannot be missing", row=_first_row(values.isna()),
                            column=name, operation="load_dataset")

    invalid_event = ~events.isin([0.0, 1.0])
    if invalid_event.any():
        row = _first_row(invalid_event)
        context = ErrorContext(
            operation="load_dataset",
            error_code=ErrorCode.DATA_DOMAIN,
            details={"value": float(events.iloc[row - 1])}
        )
        raise DataError("Event values must be 0 or 1", row=row,
                        column=schema.event_column, context=context)
    negative = times < 0
    if negative.any():
        row = _first_row(negative)
        context = ErrorContext(
            operation="load_dataset",
            error_code=ErrorCode.DATA_DOMAIN,
            details={"value": float(times.iloc[row - 1])}
        )
        raise DataError("Follow-up time must be nonnegative", row=row,
                        column=schema.time_column, context=context)
    return times, events

def load_dataset(
    path: Path | str, schema: Optional[DatasetSchema] = None, *, outcomes: bool = True
) -> Tuple[SurvivalData, IngestionReport]:
    """Load a delimited survival file.

    Rows in error messages are 1-based data rows, not counting the header.

    Args:
        path: File to read
        schema: Column roles and missing-value policies (defaults to
            DatasetSchema(): columns `time` and `event`, all others features)
        outcomes: Read the outcome columns; when False they may be absent and
            the returned times and events are placeholders (0, censored)

    Returns:
        (dataset, ingestion report)

    Raises:
        FileError: If the file cannot be read
        DataError: If outcome columns are missing or invalid, or a cell
            cannot be parsed
    """
    path = Path(path)
    schema = schema or DatasetSchema()
    raw = _read_raw(path, schema)
    columns = [str(c) for c in raw.columns]

    outcome_columns = (schema.time_column, schema.event_column) if outcomes else ()
    absent = [c for c in outcome_columns if c not in columns]
    policies = schema.policies(columns)
    absent.extend(name for name in policies if name not in columns)
    if absent:
        context = ErrorContext(
            operation="load_dataset",
            error_code=ErrorCode.DATA_SCHEMA,
            path=path,
            details={"missing_columns": absent, "header": columns}
        )
        raise DataError("Required columns are not in the file header", context=context)

    report = IngestionReport(path=path, rows=len(raw))
    if outcomes:
        times, events = _outcome_columns(raw, schema)
    else:
        times = pd.Series(np.zeros(len(raw)))
        events = pd.Series(np.zeros(len(raw)))

    kept: Dict[str, pd.Series] = {}
    for name, policy in policies.items():
        values = _numeric_column(raw[name], name, schema.missing_values)
        n_missing = int(values.isna().sum())
        fraction = n_missing / len(values) if len(values) else 0.0
        if schema.drop_threshold is not None and fraction > schema.drop_threshold:
            report.dropped[name] = fraction
            logger.warning("Dropping %s: %.1f%% of values missing", name, 100.0 * fraction)
            continue
        if n_missing:
            if policy.missing == MissingPolicy.DEFAULT:
                fill = float(policy.default)
            else:
                fill = float(values.median())
            if np.isnan(fill):
                report.dropped[name] = fraction
                logger.warning("Dropping %s: no observed values to impute from", name)
                continue
            values = values.fillna(fill)
            report.imputed[name] = n_missing
            report.fill_values[name] = fill
            logger.info("Imputed %d missing value(s) of %s with %g", n_missing, name, fill)
        kept[name] = values

    report.features = list(kept)
    covariates = (
        np.column_stack([v.to_numpy() for v in kept.values()]) if kept
        else np.zeros((len(raw), 0))
    )
    data = SurvivalData(
        times.to_numpy(), events.to_numpy().astype(bool), covariates, tuple(kept)
    )
    logger.info("Loaded %d subjects with %d covariate(s) from %s", data.n_subjects, data.n_features, path)
    return data, report

def dataset_frame(data: SurvivalData, time_column: str = "time", event_column: str = "event") -> pd.DataFrame:
    """Dataset as a table with outcome columns first."""
    frame = pd.DataFrame(data.covariates, columns=list(data.feature_names))
    frame.insert(0, event_column, data.events.astype(int))
    frame.insert(0, time_column, data.times)
    return frame

def write_dataset(data: SurvivalData, path: Path | str, delimiter: str = ",") -> Path:
    """Write a dataset in the delimited format read by load_dataset."""
    path = ensure_parent(Path(path))
    dataset_frame(data).to_csv(path, sep=delimiter, index=False, encoding="utf-8", lineterminator="\n")
    return path

def split(
    data: SurvivalData, train_fraction: float = 0.7, seed: int = 0
) -> Tuple[SurvivalData, SurvivalData]:
    """Seeded random partition into training and test cohorts.

    The training part receives round(N * train_fraction) subjects.

    Raises:
        ValidationError: If train_fraction is not strictly between 0 and 1
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValidationError("Training fraction must be between 0 and 1",
                              operation="split", details={"train_fraction": train_fraction})
    order = make_rng(seed).permutation(data.n_subjects)
    n_train = int(np.floor(data.n_subjects * train_fraction + 0.5))
    return data.subset(order[:n_train]), data.subset(order[n_train:])
