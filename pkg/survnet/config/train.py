"""Configuration for networks, time grids and training runs.

This module defines the settings a training run is assembled from:

- `LayerSpec`: one layer of the feed-forward network
- `NetworkSpec`: hidden layer sizes, activation and output head, expanded
  into a tuple of `LayerSpec` for a given input width and grid
- `GridSpec`: how follow-up time is cut into intervals
- `TrainConfig`: optimizer and regularization hyperparameters

Defaults follow the runtime benchmark setup: RMSprop with learning rate 1e-3,
decay 0.9, minibatches of 256 and a fixed budget of 1000 epochs.

Path: survnet/config/train.py
"""
import logging
from typing import List, Optional, Tuple

from pydantic import Field, field_validator, model_validator

from survnet.common.enums import Activation, GridScheme, HeadKind, LayerKind
from survnet.config.base import ConfigModel
from survnet.survival.timegrid import (
    TimeGrid, make_halflife_grid, make_halflife_grid_to_horizon, make_uniform_grid
)

logger = logging.getLogger(__name__)

DEFAULT_L2_CANDIDATES: Tuple[float, ...] = (0.0, 1e-4, 1e-3, 1e-2, 1e-1)

class LayerSpec(ConfigModel):
    """One layer of the network.

    Attributes:
        kind: Dense hidden layer or one of the two output heads
        input_dim: Width of the incoming activations (0 for a covariate-free
            null model)
        output_dim: Width of the produced activations
        activation: Elementwise activation applied to the layer output
        use_bias: Whether the layer adds a bias vector
    """
    kind: LayerKind
    input_dim: int = Field(ge=0)
    output_dim: int = Field(ge=1)
    activation: Activation = Activation.IDENTITY
    use_bias: bool = True

    @model_validator(mode="after")
    def check_head(self) -> "LayerSpec":
        """Enforce the shape rules of the output heads."""
        if self.kind == LayerKind.PROPHAZ_HEAD:
            if self.input_dim != 1:
                raise ValueError("prophaz-head takes the single linear predictor as input")
            if self.use_bias:
                raise ValueError("prophaz-head has no bias; baselines are separate weights")
        if self.kind == LayerKind.FLEXIBLE_HEAD and self.activation != Activation.SIGMOID:
            raise ValueError("flexible-head must use the sigmoid activation")
        return self

class NetworkSpec(ConfigModel):
    """Architecture of a survival network.

    Attributes:
        hidden_sizes: Widths of the dense hidden layers (may be empty)
        head: Output head kind
        activation: Activation of the hidden layers
    """
    hidden_sizes: List[int] = Field(default_factory=list)
    head: HeadKind = HeadKind.FLEXIBLE
    activation: Activation = Activation.RECTIFIER

    @field_validator("hidden_sizes")
    @classmethod
    def validate_sizes(cls, v: List[int]) -> List[int]:
        """Hidden layers need at least one unit."""
        if any(size < 1 for size in v):
            raise ValueError(f"hidden layer sizes must be >= 1, got {v}")
        return v

    def layers(self, input_dim: int, n_intervals: int) -> Tuple[LayerSpec, ...]:
        """Expand the architecture into layer specifications.

        The proportional-hazards head is preceded by a bias-free dense layer
        with a single identity unit producing the linear predictor.

        Args:
            input_dim: Number of covariates
            n_intervals: Number of time intervals of the grid

        Returns:
            Layer specifications in forward order
        """
        specs: List[LayerSpec] = []
        width = input_dim
        for size in self.hidden_sizes:
            specs.append(LayerSpec(
                kind=LayerKind.DENSE, input_dim=width, output_dim=size,
                activation=self.activation, use_bias=True
            ))
            width = size

        if self.head == HeadKind.FLEXIBLE:
            specs.append(LayerSpec(
                kind=LayerKind.FLEXIBLE_HEAD, input_dim=width, output_dim=n_intervals,
                activation=Activation.SIGMOID, use_bias=True
            ))
        else:
            specs.append(LayerSpec(
                kind=LayerKind.DENSE, input_dim=width, output_dim=1,
                activation=Activation.IDENTITY, use_bias=False
            ))
            specs.append(LayerSpec(
                kind=LayerKind.PROPHAZ_HEAD, input_dim=1, output_dim=n_intervals,
                activation=Activation.IDENTITY, use_bias=False
            ))
        return tuple(specs)

class GridSpec(ConfigModel):
    """How follow-up time is divided into intervals (days).

    Attributes:
        scheme: uniform, halflife or explicit
        width: Interval width for the uniform scheme
        horizon: Last time of interest; uniform grids cover it, halflife
            grids are anchored to end at it when no halflife is given
        halflife: Half-life of interval width for the halflife scheme
        count: Number of intervals for the halflife scheme
        boundaries: Interval upper limits for the explicit scheme
    """
    scheme: GridScheme = GridScheme.HALFLIFE
    width: Optional[float] = None
    horizon: Optional[float] = None
    halflife: Optional[float] = None
    count: int = 19
    boundaries: Optional[List[float]] = None

    @model_validator(mode="after")
    def check_scheme(self) -> "GridSpec":
        """Require the fields each scheme needs."""
        if self.scheme == GridScheme.UNIFORM and (self.width is None or self.horizon is None):
            raise ValueError("uniform grids need width and horizon")
        if self.scheme == GridScheme.HALFLIFE and self.halflife is None and self.horizon is None:
            raise ValueError("halflife grids need a halflife or a horizon")
        if self.scheme == GridScheme.EXPLICIT and not self.boundaries:
            raise ValueError("explicit grids need boundaries")
        return self

    def build(self) -> TimeGrid:
        """Construct the grid described by these settings."""
        if self.scheme == GridScheme.UNIFORM:
            return make_uniform_grid(self.width, self.horizon)
        if self.scheme == GridScheme.EXPLICIT:
            return TimeGrid.from_boundaries(self.boundaries)
        if self.halflife is not None:
            grid = make_halflife_grid(self.halflife, self.count)
            if self.horizon is not None and grid.horizon < self.horizon:
                logger.warning(
                    "Half-life grid ends at %.1f days, before the requested horizon %.1f",
                    grid.horizon, self.horizon
                )
            return grid
        return make_halflife_grid_to_horizon(self.horizon, self.count)

class TrainConfig(ConfigModel):
    """Optimizer and regularization settings.

    Attributes:
        epochs: Number of passes over the training data
        batch_size: Minibatch size; the last partial batch is used
        learning_rate: RMSprop step size
        rmsprop_decay: Decay of the squared-gradient average (rho)
        rmsprop_epsilon: Denominator offset of the RMSprop update
        l2_strength: L2 penalty on kernel weights (lambda)
        rng_seed: Seed for initialization and shuffling
    """
    epochs: int = Field(default=1000, ge=1)
    batch_size: int = Field(default=256, ge=1)
    learning_rate: float = Field(default=1e-3, gt=0)
    rmsprop_decay: float = Field(default=0.9, gt=0, lt=1)
    rmsprop_epsilon: float = Field(default=1e-8, gt=0)
    l2_strength: float = Field(default=0.0, ge=0)
    rng_seed: int = Field(default=0, ge=0)
