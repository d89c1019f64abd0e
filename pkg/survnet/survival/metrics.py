"""Censoring-aware evaluation metrics.

- Harrell's concordance index over comparable pairs
- Brier score at a fixed time with inverse-probability-of-censoring weights
- Calibration tables comparing mean predicted survival with Kaplan-Meier
  survival within quantile groups of the prediction

Path: survnet/survival/metrics.py
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd

from survnet.common.errors import ValidationError, UndefinedMetricError, ErrorCode, ErrorContext
from survnet.survival.baselines import kaplan_meier
from survnet.utils.repr import compact_repr

logger = logging.getLogger(__name__)

def _as_columns(values, times, events, operation: str) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    values = np.asarray(values, dtype=float).reshape(-1)
    times = np.asarray(times, dtype=float).reshape(-1)
    events = np.asarray(events).astype(bool).reshape(-1)
    if not (values.size == times.size == events.size):
        raise ValidationError(
            "Inputs must have equal length",
            operation=operation,
            details={"values": values.size, "times": times.size, "events": events.size}
        )
    return values, times, events

def _pair_counts(
    rows: np.ndarray, risk: np.ndarray, times: np.ndarray, events: np.ndarray
) -> Tuple[int, int]:
    """(2 * concordance credit, comparable pairs) for pairs led by `rows`."""
    t_i = times[rows][:, None]
    r_i = risk[rows][:, None]
    comparable = (times[None, :] > t_i) | ((times[None, :] == t_i) & ~events[None, :])
    concordant = np.count_nonzero(comparable & (risk[None, :] < r_i))
    tied = np.count_nonzero(comparable & (risk[None, :] == r_i))
    return 2 * concordant + tied, int(np.count_nonzero(comparable))

def c_index(
    risk: Sequence[float] | np.ndarray,
    times: Sequence[float] | np.ndarray,
    events: Sequence[bool] | np.ndarray,
    *,
    threads: int = 1,
    chunk_size: int = 1024
) -> float:
    """Harrell's concordance index.

    A pair is comparable when the shorter time carries an event, or when the
    times are tied and exactly one of them is an event. Credit is 1 when the
    subject failing first has the higher risk and 0.5 when risks are tied.

    Args:
        risk: Risk scores, higher means earlier failure expected
        times: Follow-up times
        events: Event indicators
        threads: Worker threads for pair counting
        chunk_size: Leading subjects per block of pair comparisons

    Returns:
        Concordance in [0, 1]

    Raises:
        ValidationError: If lengths differ
        UndefinedMetricError: If no pair is comparable
    """
    risk, times, events = _as_columns(risk, times, events, "c_index")
    leaders = np.flatnonzero(events)
    chunks = [leaders[i:i + chunk_size] for i in range(0, leaders.size, chunk_size)]

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(lambda rows: _pair_counts(rows, risk, times, events), chunks))
    else:
        counts = [_pair_counts(rows, risk, times, events) for rows in chunks]

    credit = sum(c[0] for c in counts)
    total = sum(c[1] for c in counts)
    if total == 0:
        raise UndefinedMetricError("No comparable pairs for the concordance index",
                                   operation="c_index", details={"subjects": int(times.size)})
    return credit / (2 * total)

def brier_censored(
    pred_surv_at_t: Sequence[float] | np.ndarray,
    times: Sequence[float] | np.ndarray,
    events: Sequence[bool] | np.ndarray,
    t: float
) -> float:
    """Brier score at time t for right-censored data.

    Subjects failing by t are weighted by 1 / G(time-), subjects still under
    observation after t by 1 / G(t), where G is the Kaplan-Meier estimate of
    the censoring distribution. Subjects censored by t contribute 0 but stay
    in the denominator.

    Args:
        pred_surv_at_t: Predicted survival probability at t per subject
        times: Follow-up times
        events: Event indicators
        t: Evaluation time

    Returns:
        Weighted mean squared error

    Raises:
        ValidationError: If lengths differ or there are no subjects
        UndefinedMetricError: If G is 0 where a weight is needed
    """
    pred, times, events = _as_columns(pred_surv_at_t, times, events, "brier_censored")
    if pred.size == 0:
        raise ValidationError("No subjects given", operation="brier_censored")
    censoring = kaplan_meier(times, ~events)

    failed = events & (times <= t)
    surviving = times > t
    weights = np.zeros(pred.size)
    g_failed = np.asarray(censoring.left_limit(times[failed]), dtype=float)
    g_t = censoring(float(t))
    if np.any(g_failed <= 0) or (surviving.any() and g_t <= 0):
        context = ErrorContext(
            operation="brier_censored",
            error_code=ErrorCode.NUMERIC_UNDEFINED,
            details={"time": t}
        )
        raise UndefinedMetricError("Censoring survival reaches zero", context=context)
    weights[failed] = 1.0 / g_failed
    if surviving.any():
        weights[surviving] = 1.0 / g_t

    outcome = surviving.astype(float)
    return float(np.sum(weights * (outcome - pred) ** 2) / pred.size)

@dataclass(frozen=True)
class CalibrationRow:
    """One quantile group of a calibration table.

    Attributes:
        group: 1-based group number, lowest predicted survival first
        n: Subjects in the group
        mean_predicted: Mean predicted survival at the table's time
        observed: Kaplan-Meier survival of the group at that time
        available: False when the time is past the group's last follow-up
    """
    group: int
    n: int
    mean_predicted: float
    observed: float
    available: bool = True

@dataclass(frozen=True)
class CalibrationTable:
    """Predicted against observed survival by quantile group."""
    time: float
    rows: List[CalibrationRow] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(row.n for row in self.rows)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame([row.__dict__ for row in self.rows],
                             columns=["group", "n", "mean_predicted", "observed", "available"])
        frame.insert(0, "time", self.time)
        return frame

    def __repr__(self) -> str:
        return compact_repr(self, fields=["time", "total", "rows"], max_items=3)

def calibration_table(
    pred_surv_at_t: Sequence[float] | np.ndarray,
    times: Sequence[float] | np.ndarray,
    events: Sequence[bool] | np.ndarray,
    t: float,
    groups: int = 10
) -> CalibrationTable:
    """Group subjects by predicted survival and compare with Kaplan-Meier.

    Subjects are sorted by prediction (stable, so ties keep input order) and
    split into `groups` bins whose sizes differ by at most one.

    Raises:
        ValidationError: If there are fewer subjects than groups
    """
    pred, times, events = _as_columns(pred_surv_at_t, times, events, "calibration_table")
    if groups < 1 or pred.size < groups:
        raise ValidationError(
            "Calibration needs at least one subject per group",
            operation="calibration_table",
            details={"subjects": int(pred.size), "groups": groups}
        )
    order = np.argsort(pred, kind="stable")
    rows = []
    for number, members in enumerate(np.array_split(order, groups), start=1):
        km = kaplan_meier(times[members], events[members])
        available = t <= km.last_time
        if not available:
            logger.warning("Group %d has no follow-up at %.1f days", number, t)
        rows.append(CalibrationRow(
            group=number,
            n=int(members.size),
            mean_predicted=float(pred[members].mean()),
            observed=float(km(float(t))) if available else float("nan"),
            available=bool(available)
        ))
    return CalibrationTable(time=float(t), rows=rows)
