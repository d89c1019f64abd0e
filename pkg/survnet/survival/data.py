"""Survival records and datasets.

A `SurvivalRecord` is one subject: follow-up time in days, whether the failure
was observed, and a covariate vector. `SurvivalData` holds a whole cohort as
column arrays, which is what the estimators and the network consume.

Path: survnet/survival/data.py
"""
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from survnet.common.errors import ValidationError
from survnet.utils.repr import value_repr

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class SurvivalRecord:
    """One subject.

    Attributes:
        time: Follow-up time in days (failure or censoring)
        event: True when the failure was observed
        covariates: Covariate vector
    """
    time: float
    event: bool
    covariates: Tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if not self.time >= 0:
            raise ValidationError("Follow-up time must be nonnegative",
                                  operation="make_record", details={"time": self.time})
        object.__setattr__(self, "covariates", tuple(float(c) for c in self.covariates))

@dataclass(frozen=True, eq=False)
class SurvivalData:
    """A cohort stored column-wise.

    Attributes:
        times: Follow-up times, shape (N,)
        events: Event indicators, shape (N,)
        covariates: Covariate matrix, shape (N, d)
        feature_names: Names of the d covariate columns
    """
    times: np.ndarray
    events: np.ndarray
    covariates: np.ndarray
    feature_names: Tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float).reshape(-1)
        events = np.asarray(self.events).astype(bool).reshape(-1)
        covariates = np.asarray(self.covariates, dtype=float)
        if covariates.ndim == 1:
            covariates = covariates.reshape(len(times), -1)
        if not (len(times) == len(events) == covariates.shape[0]):
            raise ValidationError(
                "times, events and covariates must have the same number of rows",
                operation="make_dataset",
                details={"times": len(times), "events": len(events),
                         "covariates": covariates.shape[0]}
            )
        if np.any(~(times >= 0)):
            raise ValidationError("Follow-up times must be nonnegative",
                                  operation="make_dataset")
        names = tuple(self.feature_names) or tuple(f"x{i}" for i in range(covariates.shape[1]))
        if len(names) != covariates.shape[1]:
            raise ValidationError(
                "feature_names must match the covariate width",
                operation="make_dataset",
                details={"names": len(names), "width": covariates.shape[1]}
            )
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "events", events)
        object.__setattr__(self, "covariates", covariates)
        object.__setattr__(self, "feature_names", names)

    @classmethod
    def from_records(
        cls,
        records: Sequence[SurvivalRecord],
        feature_names: Optional[Sequence[str]] = None
    ) -> "SurvivalData":
        """Build a dataset from records with a constant covariate dimension."""
        widths = {len(r.covariates) for r in records}
        if len(widths) > 1:
            raise ValidationError("Covariate dimension differs between records",
                                  operation="make_dataset",
                                  details={"widths": sorted(widths)})
        width = widths.pop() if widths else 0
        return cls(
            times=np.array([r.time for r in records], dtype=float),
            events=np.array([r.event for r in records], dtype=bool),
            covariates=np.array([r.covariates for r in records], dtype=float).reshape(len(records), width),
            feature_names=tuple(feature_names or ())
        )

    @property
    def n_subjects(self) -> int:
        return len(self.times)

    @property
    def n_features(self) -> int:
        return self.covariates.shape[1]

    def __len__(self) -> int:
        return self.n_subjects

    def records(self) -> Iterator[SurvivalRecord]:
        """Iterate the cohort as records."""
        for t, e, x in zip(self.times, self.events, self.covariates):
            yield SurvivalRecord(float(t), bool(e), tuple(x))

    def subset(self, index: np.ndarray | List[int]) -> "SurvivalData":
        """Rows selected by index (duplicates allowed)."""
        index = np.asarray(index, dtype=int)
        return SurvivalData(
            self.times[index], self.events[index], self.covariates[index],
            self.feature_names
        )

    def feature(self, name: str) -> np.ndarray:
        """Column of the named covariate."""
        try:
            return self.covariates[:, self.feature_names.index(name)]
        except ValueError as e:
            raise ValidationError(f"Unknown feature {name!r}",
                                  operation="select_feature",
                                  details={"available": list(self.feature_names)}) from e

    def __repr__(self) -> str:
        return (
            f"SurvivalData(n_subjects={self.n_subjects}, "
            f"events={int(self.events.sum())}, "
            f"feature_names={value_repr(self.feature_names)})"
        )
