"""Follow-up time grids and target encoding.

Follow-up time is cut into n intervals that are left-closed and right-open,
[t_{j-1}, t_j) with t_0 = 0. A grid stores the upper limits t_1..t_n in days.
Each subject's (time, event) pair is encoded into two indicator vectors:

- surv_s marks the intervals the subject survived through
- surv_f marks the interval in which the failure happened, if any

A censored subject is credited with surviving an interval when censoring
happened at or after the interval midpoint. Events at or past the last
boundary cannot be placed in any interval; they are encoded as censored at
t_n and counted in a warning.

Path: survnet/survival/timegrid.py
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from survnet.common.errors import ValidationError, ErrorCode, ErrorContext
from survnet.survival.data import SurvivalRecord

logger = logging.getLogger(__name__)

BEYOND_GRID = -1

@dataclass(frozen=True)
class TimeGrid:
    """Ordered interval upper limits, in days.

    Attributes:
        uppers: Strictly increasing positive upper limits t_1..t_n
    """
    uppers: Tuple[float, ...]

    def __post_init__(self) -> None:
        uppers = tuple(float(u) for u in self.uppers)
        object.__setattr__(self, "uppers", uppers)
        if not uppers:
            raise ValidationError("A time grid needs at least one interval",
                                  operation="make_grid")
        if not all(math.isfinite(u) for u in uppers):
            raise ValidationError("Grid boundaries must be finite",
                                  operation="make_grid", details={"uppers": uppers})
        if uppers[0] <= 0:
            raise ValidationError("First grid boundary must be positive",
                                  operation="make_grid", details={"first": uppers[0]})
        if any(b <= a for a, b in zip(uppers, uppers[1:])):
            raise ValidationError(
                "Grid boundaries must be strictly increasing without duplicates",
                operation="make_grid", details={"uppers": uppers}
            )

    @classmethod
    def from_boundaries(cls, boundaries: Iterable[float]) -> "TimeGrid":
        """Build a grid from explicit boundaries; a leading 0 is dropped."""
        values = [float(b) for b in boundaries]
        if values and values[0] == 0.0:
            values = values[1:]
        return cls(tuple(values))

    @property
    def n(self) -> int:
        """Number of intervals."""
        return len(self.uppers)

    @property
    def horizon(self) -> float:
        """Upper limit of the last interval."""
        return self.uppers[-1]

    def upper_array(self) -> np.ndarray:
        return np.asarray(self.uppers, dtype=float)

    def lower_array(self) -> np.ndarray:
        return np.concatenate(([0.0], self.upper_array()[:-1]))

    def midpoints(self) -> np.ndarray:
        """Midpoint of each interval, the censoring credit threshold."""
        return 0.5 * (self.lower_array() + self.upper_array())

    def boundaries(self) -> np.ndarray:
        """All boundaries including t_0 = 0."""
        return np.concatenate(([0.0], self.upper_array()))

    def __len__(self) -> int:
        return self.n

@dataclass(frozen=True, eq=False)
class EncodedTarget:
    """Paired surv_s / surv_f indicators for one subject or a batch.

    Arrays have shape (n,) for a single subject and (N, n) for a batch.

    Attributes:
        surv_s: 1 where the subject survived through the interval
        surv_f: 1 in the interval where the failure happened
    """
    surv_s: np.ndarray
    surv_f: np.ndarray

    def __post_init__(self) -> None:
        if self.surv_s.shape != self.surv_f.shape:
            raise ValidationError(
                "surv_s and surv_f must have equal shapes",
                operation="encode",
                details={"surv_s": self.surv_s.shape, "surv_f": self.surv_f.shape}
            )

    @property
    def n_intervals(self) -> int:
        return self.surv_s.shape[-1]

    @property
    def n_subjects(self) -> int:
        return 1 if self.surv_s.ndim == 1 else self.surv_s.shape[0]

    def take(self, index: np.ndarray | slice | int) -> "EncodedTarget":
        """Select rows of a batch target."""
        return EncodedTarget(
            np.atleast_2d(self.surv_s)[index], np.atleast_2d(self.surv_f)[index]
        )

    def as_batch(self) -> "EncodedTarget":
        """View as a (N, n) batch."""
        return EncodedTarget(np.atleast_2d(self.surv_s), np.atleast_2d(self.surv_f))

    @classmethod
    def stack(cls, targets: Iterable["EncodedTarget"]) -> "EncodedTarget":
        """Stack single-subject targets into a batch."""
        targets = list(targets)
        if not targets:
            raise ValidationError("Cannot stack an empty list of targets",
                                  operation="stack_targets")
        return cls(
            np.vstack([t.surv_s for t in targets]),
            np.vstack([t.surv_f for t in targets])
        )

def make_uniform_grid(width: float, horizon: float) -> TimeGrid:
    """Intervals of constant width covering the horizon.

    Args:
        width: Interval width in days
        horizon: Last time to cover in days

    Returns:
        Grid with uppers width, 2*width, ..., ceil(horizon/width)*width

    Raises:
        ValidationError: If width or horizon is not positive, or horizon < width
    """
    if not (width > 0 and horizon > 0):
        raise ValidationError(
            "Grid width and horizon must be positive",
            operation="make_uniform_grid",
            details={"width": width, "horizon": horizon}
        )
    if horizon < width:
        raise ValidationError(
            "Grid horizon must be at least one interval width",
            operation="make_uniform_grid",
            details={"width": width, "horizon": horizon}
        )
    # round() keeps exact multiples like 730/365 from gaining an interval
    count = math.ceil(round(horizon / width, 9))
    return TimeGrid(tuple(width * k for k in range(1, count + 1)))

def halflife_boundary(x: float, halflife: float) -> float:
    """Time by which a fraction x of a half-life-distributed population has failed."""
    return -math.log(1.0 - x) * halflife / math.log(2.0)

def make_halflife_grid(halflife: float, count: int) -> TimeGrid:
    """Intervals widening with follow-up time.

    Boundaries are placed at -ln(1 - x_k) * halflife / ln 2 with
    x_k = (k + 1) / (count + 1), so each interval holds about the same share
    of failures from an exponential population with that half-life. With
    count = 19 this gives x in {0.05, 0.10, ..., 0.95}.

    Args:
        halflife: Half-life of interval width in days
        count: Number of intervals

    Returns:
        Grid with `count` intervals

    Raises:
        ValidationError: If halflife is not positive or count < 1
    """
    if not halflife > 0:
        raise ValidationError("Half-life must be positive",
                              operation="make_halflife_grid",
                              details={"halflife": halflife})
    if count < 1:
        raise ValidationError("Half-life grids need at least one interval",
                              operation="make_halflife_grid",
                              details={"count": count})
    return TimeGrid(tuple(
        halflife_boundary((k + 1) / (count + 1), halflife) for k in range(count)
    ))

def make_halflife_grid_to_horizon(horizon: float, count: int) -> TimeGrid:
    """Half-life grid whose last boundary lands on the horizon.

    Args:
        horizon: Required last boundary in days
        count: Number of intervals

    Returns:
        Grid with `count` intervals and uppers[-1] >= horizon
    """
    if not horizon > 0:
        raise ValidationError("Grid horizon must be positive",
                              operation="make_halflife_grid_to_horizon",
                              details={"horizon": horizon})
    if count < 1:
        raise ValidationError("Half-life grids need at least one interval",
                              operation="make_halflife_grid_to_horizon",
                              details={"count": count})
    halflife = horizon * math.log(2.0) / -math.log(1.0 - count / (count + 1))
    uppers = list(make_halflife_grid(halflife, count).uppers)
    uppers[-1] = max(uppers[-1], float(horizon))
    return TimeGrid(tuple(uppers))

def interval_index(t: float, grid: TimeGrid) -> int:
    """1-based interval containing t, or BEYOND_GRID when t >= t_n.

    Raises:
        ValidationError: If t is negative
    """
    if t < 0:
        raise ValidationError("Time must be nonnegative",
                              operation="interval_index", details={"time": t})
    return int(interval_indices(np.asarray([t], dtype=float), grid)[0])

def interval_indices(times: np.ndarray, grid: TimeGrid) -> np.ndarray:
    """Vectorized `interval_index` for nonnegative times."""
    times = np.asarray(times, dtype=float)
    index = np.searchsorted(grid.upper_array(), times, side="right") + 1
    return np.where(times >= grid.horizon, BEYOND_GRID, index)

def encode_batch(times: np.ndarray, events: np.ndarray, grid: TimeGrid) -> EncodedTarget:
    """Encode many (time, event) pairs at once.

    Args:
        times: Follow-up times in days, shape (N,)
        events: Event indicators, shape (N,)
        grid: Interval grid

    Returns:
        Batch target with (N, n) indicator matrices

    Raises:
        ValidationError: If any time is negative or shapes disagree
    """
    times = np.asarray(times, dtype=float).reshape(-1)
    events = np.asarray(events).astype(bool).reshape(-1)
    if times.shape != events.shape:
        raise ValidationError("times and events must have equal length",
                              operation="encode",
                              details={"times": times.shape, "events": events.shape})
    if np.any(times < 0) or np.any(np.isnan(times)):
        bad = int(np.flatnonzero((times < 0) | np.isnan(times))[0])
        context = ErrorContext(
            operation="encode",
            error_code=ErrorCode.VALIDATION_RANGE,
            details={"index": bad, "time": float(times[bad])}
        )
        raise ValidationError("Follow-up time must be nonnegative", context=context)

    uppers = grid.upper_array()
    lowers = grid.lower_array()
    t = times[:, None]

    beyond = events & (times >= grid.horizon)
    observed = events & ~beyond
    if beyond.any():
        logger.warning(
            "%d event(s) at or past the last boundary %.1f encoded as censored",
            int(beyond.sum()), grid.horizon
        )

    failed_before = uppers[None, :] <= t
    credited = grid.midpoints()[None, :] <= t
    surv_s = np.where(observed[:, None], failed_before, credited)
    surv_f = observed[:, None] & (lowers[None, :] <= t) & (t < uppers[None, :])
    return EncodedTarget(surv_s.astype(float), surv_f.astype(float))

def encode(record: SurvivalRecord, grid: TimeGrid) -> EncodedTarget:
    """Encode one subject's (time, event) into surv_s / surv_f.

    Args:
        record: Subject to encode
        grid: Interval grid

    Returns:
        Single-subject target with arrays of shape (n,)

    Raises:
        ValidationError: If the follow-up time is negative
    """
    batch = encode_batch(np.asarray([record.time]), np.asarray([record.event]), grid)
    return EncodedTarget(batch.surv_s[0], batch.surv_f[0])
