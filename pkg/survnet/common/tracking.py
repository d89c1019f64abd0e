"""Epoch tracking for training runs.

This module records the progress of an optimization run: the loss after each
epoch, the lifecycle state of the run, and summary statistics. The tracker is
safe to read from other threads while training writes to it, so a caller can
poll progress of a long run.

The module implements:
- Thread-safe loss trace collection
- Run lifecycle states
- Summary statistics for reporting

Path: survnet/common/tracking.py
"""
import logging
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from threading import Lock
from typing import List, NamedTuple, Optional

from survnet.common.errors import StateError

logger = logging.getLogger(__name__)

class TrackerState(Enum):
    """Possible states of a training run."""
    INITIALIZED = "initialized"
    ACTIVE = "active"
    COMPLETED = "completed"
    ERROR = "error"

@dataclass
class EpochRecord:
    """Information about one finished epoch.

    Attributes:
        epoch: 1-based epoch number
        loss: Training objective over the full training set
        timestamp: When the epoch finished
    """
    epoch: int
    loss: float
    timestamp: float = field(default_factory=time.time)

class TrackerStats(NamedTuple):
    """Snapshot of a training run for monitoring and reporting."""
    epochs: int
    first_loss: Optional[float]
    last_loss: Optional[float]
    best_loss: Optional[float]
    elapsed: float

class TrainingTracker:
    """Tracks the loss trace and lifecycle of a training run.

    Attributes:
        total_epochs: Number of epochs the run is budgeted for
        log_every: Emit an info log line every this many epochs (0 disables)
        state: Current lifecycle state

    Example:
        ```python
        tracker = TrainingTracker(total_epochs=100)
        tracker.start()
        for epoch in range(1, 101):
            ...
            tracker.record(epoch, loss)
        tracker.complete()
        print(tracker.losses())
        ```
    """

    def __init__(self, total_epochs: int, log_every: int = 100):
        self.total_epochs = total_epochs
        self.log_every = log_every
        self.state = TrackerState.INITIALIZED

        self._records: List[EpochRecord] = []
        self._started: Optional[float] = None
        self._finished: Optional[float] = None
        self._lock = Lock()

    def start(self) -> None:
        """Mark the run as active.

        Raises:
            StateError: If the run was already started
        """
        with self._lock:
            if self.state != TrackerState.INITIALIZED:
                raise StateError(
                    "Training run already started",
                    operation="start_tracking",
                    current_state=self.state.value,
                    expected_state=TrackerState.INITIALIZED.value
                )
            self.state = TrackerState.ACTIVE
            self._started = time.time()
        logger.debug("Training run started (%d epochs budgeted)", self.total_epochs)

    def record(self, epoch: int, loss: float) -> None:
        """Append the loss of a finished epoch.

        Args:
            epoch: 1-based epoch number
            loss: Objective value after the epoch

        Raises:
            StateError: If the run is not active
        """
        with self._lock:
            if self.state != TrackerState.ACTIVE:
                raise StateError(
                    "Cannot record epochs on an inactive run",
                    operation="record_epoch",
                    current_state=self.state.value,
                    expected_state=TrackerState.ACTIVE.value
                )
            self._records.append(EpochRecord(epoch, loss))

        if self.log_every and (epoch % self.log_every == 0 or epoch == 1):
            logger.info("Epoch %d/%d: loss=%.6f", epoch, self.total_epochs, loss)

    def complete(self) -> None:
        """Mark the run as finished."""
        with self._lock:
            self.state = TrackerState.COMPLETED
            self._finished = time.time()
        logger.debug("Training run completed after %d epochs", len(self._records))

    def fail(self) -> None:
        """Mark the run as failed."""
        with self._lock:
            self.state = TrackerState.ERROR
            self._finished = time.time()

    def losses(self) -> List[float]:
        """Copy of the loss trace in epoch order."""
        with self._lock:
            return [r.loss for r in self._records]

    def get_stats(self) -> TrackerStats:
        """Get current run statistics."""
        with self._lock:
            losses = [r.loss for r in self._records if math.isfinite(r.loss)]
            end = self._finished or time.time()
            return TrackerStats(
                epochs=len(self._records),
                first_loss=self._records[0].loss if self._records else None,
                last_loss=self._records[-1].loss if self._records else None,
                best_loss=min(losses) if losses else None,
                elapsed=(end - self._started) if self._started else 0.0
            )

    def __repr__(self) -> str:
        return (
            f"TrainingTracker(total_epochs={self.total_epochs}, "
            f"state={self.state.value}, epochs={len(self._records)})"
        )
