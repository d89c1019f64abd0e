"""Delimited output tables for external plotting and reporting.

Path: survnet/io/tables.py
"""
import logging
from pathlib import Path
from typing import Dict, Optional, Sequence

import numpy as np
import pandas as pd

from survnet.common.base import ensure_parent
from survnet.survival.likelihood import SurvivalCurve
from survnet.survival.timegrid import TimeGrid

logger = logging.getLogger(__name__)

def boundary_label(t: float) -> str:
    """Column name for survival at a boundary, e.g. ``S_365``."""
    return f"S_{t:g}"

def write_table(frame: pd.DataFrame, path: Path | str) -> Path:
    """Write a table as UTF-8 comma-separated text with a header row."""
    path = ensure_parent(Path(path))
    frame.to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
    logger.debug("Wrote %d row(s) to %s", len(frame), path)
    return path

def curves_frame(
    curves: SurvivalCurve, grid: TimeGrid, subject_ids: Optional[Sequence] = None
) -> pd.DataFrame:
    """Cumulative survival per subject, one column per interval boundary."""
    cum = np.atleast_2d(curves.cum_surv)
    frame = pd.DataFrame(cum, columns=[boundary_label(u) for u in grid.uppers])
    ids = list(subject_ids) if subject_ids is not None else list(range(1, cum.shape[0] + 1))
    frame.insert(0, "subject", ids)
    return frame

def loss_frame(losses: Sequence[float]) -> pd.DataFrame:
    """Loss trace with 1-based epoch numbers."""
    return pd.DataFrame({"epoch": np.arange(1, len(losses) + 1), "loss": list(losses)})

def time_label(days: float) -> str:
    """Readable label for common evaluation times."""
    labels = {182.0: "6 months", 365.0: "1 year", 730.0: "2 years", 1095.0: "3 years"}
    return labels.get(float(days), f"{days:g} days")

def metrics_frame(rows: Sequence[Dict[str, object]]) -> pd.DataFrame:
    """Long table of metric results with columns model, metric, time, label, value."""
    return pd.DataFrame(list(rows), columns=["model", "metric", "time", "label", "value"])
