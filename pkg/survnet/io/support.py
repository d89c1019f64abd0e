"""Preparation of the public SUPPORT cohort file.

The SUPPORT study (9,105 hospitalized adults) is distributed by the Vanderbilt
Department of Biostatistics as `support2.csv`. It is not shipped here. This
module turns the downloaded file into an all-numeric dataset:

- outcome columns `d.time` (days) and `death` are kept as they are
- numeric covariates are copied, with blanks left missing
- `income` becomes an ordinal code 0-3
- `sex`, `race`, `ca` and `dzgroup` become 0/1 indicator columns against a
  reference level (female, white, no cancer, ARF/MOSF with sepsis); a missing
  category leaves its indicators missing
- columns that are outcomes or model-derived estimates in disguise (hospital
  death, length of stay, costs, the study's own prognoses, DNR orders,
  functional outcome) are not carried over

The companion schema (`support_schema()`) imputes missing laboratory values
with the defaults recommended by the dataset documentation, other covariates
with the median, and drops covariates missing in more than 4,000 of the
9,105 patients.
The variable selection and fill values are a reconstruction of the published
preprocessing, whose exact recipe is not distributed with the data.

Example:
    ```python
    from survnet.io import load_dataset
    from survnet.io.support import prepare_support, support_schema

    prepare_support("support2.csv", "support.csv")
    data, report = load_dataset("support.csv", support_schema())
    print(sorted(report.dropped))  # ['adlp', 'bun', 'glucose', 'urine']
    ```

Path: survnet/io/support.py
"""
import logging
from importlib import resources
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd

from survnet.common.base import ensure_parent
from survnet.common.errors import DataError, FileError, ErrorCode, ErrorContext
from survnet.config.schema import DatasetSchema

logger = logging.getLogger(__name__)

TIME_COLUMN = "d.time"
EVENT_COLUMN = "death"

NUMERIC_COLUMNS: Tuple[str, ...] = (
    "age", "num.co", "edu", "scoma", "diabetes", "dementia", "sps", "aps",
    "meanbp", "wblc", "hrt", "resp", "temp", "pafi", "alb", "bili", "crea",
    "sod", "ph", "glucose", "bun", "urine", "adlp", "adls",
)

INCOME_LEVELS: Dict[str, int] = {
    "under $11k": 0,
    "$11-$25k": 1,
    "$25-$50k": 2,
    ">$50k": 3,
}

# source column -> {level: indicator column}; unlisted levels are the reference
INDICATORS: Dict[str, Dict[str, str]] = {
    "sex": {"male": "sex_male"},
    "race": {
        "black": "race_black",
        "asian": "race_asian",
        "hispanic": "race_hispanic",
        "other": "race_other",
    },
    "ca": {"yes": "ca_yes", "metastatic": "ca_metastatic"},
    "dzgroup": {
        "CHF": "dz_chf",
        "COPD": "dz_copd",
        "Cirrhosis": "dz_cirrhosis",
        "Colon Cancer": "dz_colon_cancer",
        "Coma": "dz_coma",
        "Lung Cancer": "dz_lung_cancer",
        "MOSF w/Malig": "dz_mosf_malig",
    },
}

def support_columns() -> List[str]:
    """Covariate columns written by `prepare_support`, in order."""
    columns = list(NUMERIC_COLUMNS) + ["income"]
    for levels in INDICATORS.values():
        columns.extend(levels.values())
    return columns

def support_schema() -> DatasetSchema:
    """The packaged schema for files written by `prepare_support`."""
    source = resources.files("survnet") / "schemas" / "support_schema.json"
    with resources.as_file(source) as path:
        return DatasetSchema.from_file(path)

def _numeric(raw: pd.DataFrame, name: str) -> pd.Series:
    values = pd.to_numeric(raw[name], errors="coerce")
    bad = values.isna() & raw[name].notna()
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0]) + 1
        raise DataError(f"Non-numeric value {raw[name].iloc[row - 1]!r}", row=row, column=name,
                        operation="prepare_support")
    return values

def prepare_support(raw_path: Path | str, output: Path | str) -> Path:
    """Convert the public SUPPORT file into a numeric survival dataset.

    Args:
        raw_path: Downloaded `support2.csv`
        output: Where to write the prepared file

    Returns:
        The written path

    Raises:
        FileError: If the raw file cannot be read
        DataError: If expected columns are absent or cells cannot be parsed
    """
    raw_path = Path(raw_path)
    try:
        raw = pd.read_csv(raw_path, na_values=["", "NA"], keep_default_na=False, low_memory=False)
    except (OSError, pd.errors.ParserError, UnicodeDecodeError) as e:
        raise FileError(f"Failed to read SUPPORT file: {e}", path=raw_path,
                        operation="prepare_support", original_error=e) from e

    required = [TIME_COLUMN, EVENT_COLUMN, *NUMERIC_COLUMNS, "income", *INDICATORS]
    absent = [c for c in required if c not in raw.columns]
    if absent:
        context = ErrorContext(
            operation="prepare_support",
            error_code=ErrorCode.DATA_SCHEMA,
            path=raw_path,
            details={"missing_columns": absent}
        )
        raise DataError("File does not look like support2.csv", context=context)

    complete = raw[TIME_COLUMN].notna() & raw[EVENT_COLUMN].notna()
    if not complete.all():
        logger.warning("Skipping %d row(s) without follow-up time or vital status", int((~complete).sum()))
        raw = raw.loc[complete].reset_index(drop=True)

    frame = pd.DataFrame({
        TIME_COLUMN: _numeric(raw, TIME_COLUMN),
        EVENT_COLUMN: _numeric(raw, EVENT_COLUMN).astype(int),
    })
    for name in NUMERIC_COLUMNS:
        frame[name] = _numeric(raw, name)

    unknown = set(raw["income"].dropna()) - set(INCOME_LEVELS)
    if unknown:
        raise DataError(f"Unknown income levels {sorted(unknown)}", column="income",
                        operation="prepare_support")
    frame["income"] = raw["income"].map(INCOME_LEVELS)

    for source, levels in INDICATORS.items():
        values = raw[source]
        for level, column in levels.items():
            frame[column] = (values == level).astype(float).where(values.notna())

    output = ensure_parent(Path(output))
    frame.to_csv(output, index=False, na_rep="", lineterminator="\n")
    logger.info("Prepared %d SUPPORT patients with %d covariates into %s",
                len(frame), frame.shape[1] - 2, output)
    return output
