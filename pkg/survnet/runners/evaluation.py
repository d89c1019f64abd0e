"""Runners applying a trained model: evaluate, predict and calibrate.

Evaluation reports Harrell's C-index, ranking subjects by the predicted
probability of failing before a ranking time (1 year by default), and the
censored Brier score at each evaluation time (6 months, 1 year and 3 years by
default). Calibration tables at the same times are written alongside. When a
training file for the Cox comparator is given, a Cox model is fitted on it
and scored on the same cohort with the same metrics. Its survival is read off
the model's interval grid the same way as the network's curves.

Path: survnet/runners/evaluation.py
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from survnet.common.base import BaseRunner, RunnerResult, optional_path
from survnet.common.errors import NumericalError, OutOfHorizonError
from survnet.io.model_store import read_model
from survnet.io.tables import curves_frame, metrics_frame, time_label, write_table
from survnet.nnet.network import ModelParams, predict, survival_at
from survnet.runners._shared import load_for_model
from survnet.survival.baselines import cox_fit, cox_survival_curves
from survnet.survival.data import SurvivalData
from survnet.survival.timegrid import TimeGrid
from survnet.survival.metrics import brier_censored, c_index, calibration_table

logger = logging.getLogger(__name__)

DEFAULT_EVAL_TIMES = (182.0, 365.0, 1095.0)
DEFAULT_RANK_TIME = 365.0

class _ModelRunner(BaseRunner):
    """Base for runners that read a model and a cohort file."""

    def __init__(
        self,
        model_path: Path | str,
        data_path: Path | str,
        time_column: str = "time",
        event_column: str = "event"
    ):
        super().__init__()
        self.model_path = Path(model_path)
        self.data_path = Path(data_path)
        self.time_column = time_column
        self.event_column = event_column
        self.params: Optional[ModelParams] = None
        self.metadata: Dict[str, Any] = {}

    def _load(self, outcomes: bool = True) -> SurvivalData:
        self.params, self.metadata = read_model(self.model_path)
        data, report = load_for_model(
            self.data_path, self.params, self.metadata,
            time_column=self.time_column, event_column=self.event_column, outcomes=outcomes
        )
        if report.imputed:
            self._add_warning(f"Imputed missing covariates: {report.imputed}")
        return data

class EvaluateRunner(_ModelRunner):
    """Discrimination and calibration of a model on a labelled cohort."""

    def __init__(
        self,
        model_path: Path | str,
        data_path: Path | str,
        output: Path | str,
        *,
        times: Sequence[float] = DEFAULT_EVAL_TIMES,
        rank_time: float = DEFAULT_RANK_TIME,
        calibration_output: Optional[Path | str] = None,
        groups: int = 10,
        cox_train: Optional[Path | str] = None,
        threads: int = 1,
        **columns: str
    ):
        super().__init__(model_path, data_path, **columns)
        self.output = Path(output)
        self.times = [float(t) for t in times]
        self.rank_time: Optional[float] = float(rank_time)
        self.calibration_output = optional_path(calibration_output)
        self.groups = groups
        self.cox_train = optional_path(cox_train)
        self.threads = threads
        self.metrics: Optional[pd.DataFrame] = None
        self.calibration: Optional[pd.DataFrame] = None

    def _score(
        self, model: str, surv_at: Dict[float, np.ndarray], data: SurvivalData, rows: List[Dict[str, Any]]
    ) -> None:
        if self.rank_time is not None:
            risk = 1.0 - surv_at[self.rank_time]
            value = c_index(risk, data.times, data.events, threads=self.threads)
            rows.append({"model": model, "metric": "c_index", "time": self.rank_time,
                         "label": time_label(self.rank_time), "value": value})
        for t in self.times:
            value = brier_censored(surv_at[t], data.times, data.events, t)
            rows.append({"model": model, "metric": "brier", "time": t,
                         "label": time_label(t), "value": value})

    def _score_cox(
        self,
        train_data: SurvivalData,
        data: SurvivalData,
        grid: TimeGrid,
        needed: List[float],
        rows: List[Dict[str, Any]]
    ) -> None:
        try:
            fit = cox_fit(train_data)
        except NumericalError as e:
            self._add_warning(f"Cox comparator failed: {e.message}")
            return
        if not fit.converged:
            self._add_warning("Cox comparator did not converge; skipped")
            return
        curves = cox_survival_curves(fit, data.covariates, grid)
        cox_at = {t: np.atleast_1d(survival_at(curves, grid, t)) for t in needed}
        self.summary["cox beta"] = dict(zip(fit.feature_names, np.round(fit.beta, 6).tolist()))
        self._score("cox", cox_at, data, rows)

    def _execute(self) -> None:
        data = self._load()
        grid = self.params.grid
        curves = predict(self.params, data.covariates)

        times = []
        for t in self.times:
            if t > grid.horizon:
                self._add_warning(f"Skipping {t:g} days: past the model's last interval ({grid.horizon:g})")
            else:
                times.append(t)
        self.times = times
        if self.rank_time > grid.horizon:
            self._add_warning(
                f"Skipping the C-index at {self.rank_time:g} days: past the model's last interval ({grid.horizon:g})"
            )
            self.rank_time = None
        needed = sorted(set(self.times) if self.rank_time is None else {*self.times, self.rank_time})
        surv_at = {t: np.atleast_1d(survival_at(curves, grid, t)) for t in needed}

        rows: List[Dict[str, Any]] = []
        self._score("survnet", surv_at, data, rows)

        tables = [
            calibration_table(surv_at[t], data.times, data.events, t, self.groups).to_frame()
            for t in self.times
        ]
        self.calibration = pd.concat(tables, ignore_index=True) if tables else None

        if self.cox_train is not None:
            train_data, _ = load_for_model(
                self.cox_train, self.params, self.metadata,
                time_column=self.time_column, event_column=self.event_column
            )
            self._score_cox(train_data, data, grid, needed, rows)

        self.metrics = metrics_frame(rows)
        for row in rows:
            self.summary[f"{row['model']} {row['metric']} ({row['label']})"] = row["value"]

    def _write_outputs(self) -> List[Path]:
        written = [write_table(self.metrics, self.output)]
        if self.calibration is not None:
            path = self.calibration_output or self.output.with_name(self.output.stem + ".calibration.csv")
            written.append(write_table(self.calibration, path))
        return written

class PredictRunner(_ModelRunner):
    """Predicted survival curves for every row of a covariate file.

    Writes one column per interval boundary, or one per requested time.
    """

    def __init__(
        self,
        model_path: Path | str,
        data_path: Path | str,
        output: Path | str,
        times: Optional[Sequence[float]] = None,
        **columns: str
    ):
        super().__init__(model_path, data_path, **columns)
        self.output = Path(output)
        self.times = [float(t) for t in times] if times else None
        self.table: Optional[pd.DataFrame] = None

    def _execute(self) -> None:
        data = self._load(outcomes=False)
        curves = predict(self.params, data.covariates)
        if self.times is None:
            self.table = curves_frame(curves, self.params.grid)
        else:
            self.table = pd.DataFrame({"subject": np.arange(1, data.n_subjects + 1)})
            for t in self.times:
                self.table[f"S_{t:g}"] = np.atleast_1d(survival_at(curves, self.params.grid, t))
        self.summary.update({"subjects": data.n_subjects, "columns": len(self.table.columns) - 1})

    def _write_outputs(self) -> List[Path]:
        return [write_table(self.table, self.output)]

class CalibrateRunner(_ModelRunner):
    """Decile calibration table at one time."""

    def __init__(
        self,
        model_path: Path | str,
        data_path: Path | str,
        output: Path | str,
        time: float = DEFAULT_RANK_TIME,
        groups: int = 10,
        **columns: str
    ):
        super().__init__(model_path, data_path, **columns)
        self.output = Path(output)
        self.time = float(time)
        self.groups = groups
        self.table: Optional[pd.DataFrame] = None

    def _execute(self) -> None:
        data = self._load()
        curves = predict(self.params, data.covariates)
        if self.time > self.params.grid.horizon:
            raise OutOfHorizonError(
                "Calibration time is past the model's last interval",
                operation="calibrate",
                details={"time": self.time, "horizon": self.params.grid.horizon}
            )
        surv = np.atleast_1d(survival_at(curves, self.params.grid, self.time))
        table = calibration_table(surv, data.times, data.events, self.time, self.groups)
        self.table = table.to_frame()
        self.summary.update({
            "time": self.time,
            "groups": len(table.rows),
            "max_gap": float(np.nanmax(np.abs(self.table["observed"] - self.table["mean_predicted"]))),
        })

    def _write_outputs(self) -> List[Path]:
        return [write_table(self.table, self.output)]

def evaluate_model(model_path: Path | str, data_path: Path | str, output: Path | str,
                   **kwargs: Any) -> RunnerResult:
    """Convenience function: evaluate a model file on a labelled dataset."""
    return EvaluateRunner(model_path, data_path, output, **kwargs).run()

def predict_survival(model_path: Path | str, data_path: Path | str, output: Path | str,
                     times: Optional[Sequence[float]] = None, **kwargs: Any) -> RunnerResult:
    """Convenience function: write predicted survival curves."""
    return PredictRunner(model_path, data_path, output, times, **kwargs).run()

def calibrate_model(model_path: Path | str, data_path: Path | str, output: Path | str,
                    time: float = DEFAULT_RANK_TIME, groups: int = 10, **kwargs: Any) -> RunnerResult:
    """Convenience function: write a calibration table."""
    return CalibrateRunner(model_path, data_path, output, time, groups, **kwargs).run()
