"""Proportional-hazards diagnostic runner.

Writes Kaplan-Meier survival and log(-log S) per level of one covariate at a
set of times. Parallel log(-log S) columns across levels are consistent with
proportional hazards; converging or crossing ones are not.

Path: survnet/runners/diagnostics.py
"""
import logging
from pathlib import Path
from typing import Any, List, Optional, Sequence

import numpy as np
import pandas as pd

from survnet.common.base import BaseRunner, RunnerResult
from survnet.config.schema import DatasetSchema
from survnet.io.dataset import load_dataset
from survnet.io.tables import write_table
from survnet.survival.baselines import loglog_table

logger = logging.getLogger(__name__)

class LoglogRunner(BaseRunner):
    """log(-log S) table for one covariate of a dataset file."""

    def __init__(
        self,
        input_path: Path | str,
        feature: str,
        output: Path | str,
        times: Optional[Sequence[float]] = None,
        points: int = 20,
        schema: Optional[DatasetSchema] = None
    ):
        super().__init__()
        self.input_path = Path(input_path)
        self.feature = feature
        self.output = Path(output)
        self.times = [float(t) for t in times] if times else None
        self.points = points
        self.schema = schema or DatasetSchema()
        self.table: Optional[pd.DataFrame] = None

    def _execute(self) -> None:
        data, _ = load_dataset(self.input_path, self.schema)
        times = self.times
        if times is None:
            # evenly spaced up to the last observed time
            times = np.linspace(0.0, float(data.times.max()), self.points + 1)[1:].tolist()
        self.table = loglog_table(data, self.feature, times)
        self.summary.update({
            "feature": self.feature,
            "levels": int(self.table["level"].nunique()),
            "times": len(times),
        })

    def _write_outputs(self) -> List[Path]:
        return [write_table(self.table, self.output)]

def loglog_report(input_path: Path | str, feature: str, output: Path | str, **kwargs: Any) -> RunnerResult:
    """Convenience function: write the log(-log S) table of one covariate."""
    return LoglogRunner(input_path, feature, output, **kwargs).run()
