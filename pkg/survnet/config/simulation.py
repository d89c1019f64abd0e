"""Settings for synthetic survival cohorts.

A simulated cohort is a mixture of groups. Each group has a share of the
subjects, a survival-time distribution and a binary-style covariate equal to
its group number. Censoring times are drawn from one exponential distribution
shared by all groups, and follow-up can be cut administratively.

Path: survnet/config/simulation.py
"""
import math
from typing import List, Optional

from pydantic import Field, model_validator

from survnet.common.enums import Distribution
from survnet.config.base import ConfigModel

class GroupSpec(ConfigModel):
    """One subpopulation of a simulated cohort.

    Attributes:
        fraction: Share of subjects in the group
        distribution: exponential or weibull
        median: Median survival in days
        scale: Weibull scale in days (alternative to median)
        shape: Weibull shape
    """
    fraction: float = Field(gt=0, le=1)
    distribution: Distribution = Distribution.EXPONENTIAL
    median: Optional[float] = Field(default=None, gt=0)
    scale: Optional[float] = Field(default=None, gt=0)
    shape: float = Field(default=1.5, gt=0)

    @model_validator(mode="after")
    def check_location(self) -> "GroupSpec":
        if self.median is None and self.scale is None:
            raise ValueError("give a median or a scale")
        if self.distribution == Distribution.EXPONENTIAL and self.median is None:
            raise ValueError("exponential groups are specified by their median")
        return self

    def scale_parameter(self) -> float:
        """Scale b of the distribution in days.

        Exponential: b = median / ln 2. Weibull: the given scale, or
        median / (ln 2) ** (1 / shape).
        """
        if self.distribution == Distribution.EXPONENTIAL:
            return self.median / math.log(2.0)
        if self.scale is not None:
            return self.scale
        return self.median / math.log(2.0) ** (1.0 / self.shape)

class SimSpec(ConfigModel):
    """A simulated cohort.

    Attributes:
        n_subjects: Number of subjects
        groups: Subpopulations; fractions must sum to 1
        censor_halflife: Median of the exponential censoring time in days
            (None disables random censoring)
        max_followup: Administrative end of follow-up in days
        rng_seed: Seed of the uniform stream
    """
    n_subjects: int = Field(default=5000, ge=0)
    groups: List[GroupSpec]
    censor_halflife: Optional[float] = Field(default=None, gt=0)
    max_followup: Optional[float] = Field(default=None, gt=0)
    rng_seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def check_fractions(self) -> "SimSpec":
        if not self.groups:
            raise ValueError("at least one group is required")
        total = sum(g.fraction for g in self.groups)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"group fractions must sum to 1, got {total}")
        return self

    @classmethod
    def two_group_exponential(cls, n_subjects: int = 5000, rng_seed: int = 0) -> "SimSpec":
        """Two equal groups with exponential survival, medians 200 and 400 days,
        and exponential censoring with a 400-day half-life."""
        return cls(
            n_subjects=n_subjects,
            groups=[
                GroupSpec(fraction=0.5, median=200.0),
                GroupSpec(fraction=0.5, median=400.0),
            ],
            censor_halflife=400.0,
            rng_seed=rng_seed
        )

    @classmethod
    def interval_width_study(
        cls, n_subjects: int = 5000, shape: float = 1.5, rng_seed: int = 0
    ) -> "SimSpec":
        """Two equal Weibull groups with an overall median near 182 days.

        Group medians of 115 and 316 days put the pooled median at about half
        a year for shape 1.5. Censoring has a two-year half-life and follow-up
        ends at three years.
        """
        return cls(
            n_subjects=n_subjects,
            groups=[
                GroupSpec(fraction=0.5, distribution=Distribution.WEIBULL, median=115.0, shape=shape),
                GroupSpec(fraction=0.5, distribution=Distribution.WEIBULL, median=316.0, shape=shape),
            ],
            censor_halflife=730.0,
            max_followup=1095.0,
            rng_seed=rng_seed
        )
