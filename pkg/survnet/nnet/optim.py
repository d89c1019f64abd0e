"""RMSprop parameter updates.

Path: survnet/nnet/optim.py
"""
import logging
from dataclasses import dataclass
from typing import Dict, Mapping, Tuple

import numpy as np

from survnet.common.errors import ValidationError, ErrorCode, ErrorContext
from survnet.config.train import TrainConfig
from survnet.nnet.network import ModelParams

logger = logging.getLogger(__name__)

@dataclass(frozen=True, eq=False)
class RMSpropState:
    """Running average of squared gradients, one array per parameter.

    Attributes:
        cache: Squared-gradient averages keyed like the parameters
        steps: Number of updates applied so far
    """
    cache: Dict[str, np.ndarray]
    steps: int = 0

    @classmethod
    def zeros_like(cls, values: Mapping[str, np.ndarray]) -> "RMSpropState":
        """Fresh state for a set of parameter arrays."""
        return cls({name: np.zeros_like(np.asarray(v, dtype=float)) for name, v in values.items()})

def rmsprop_update(
    values: Mapping[str, np.ndarray],
    grads: Mapping[str, np.ndarray],
    state: RMSpropState,
    learning_rate: float,
    decay: float,
    epsilon: float
) -> Tuple[Dict[str, np.ndarray], RMSpropState]:
    """Apply one RMSprop step to named arrays.

    cache <- decay * cache + (1 - decay) * g^2
    value <- value - learning_rate * g / (sqrt(cache) + epsilon)

    Args:
        values: Current parameter arrays
        grads: Gradients with the same names and shapes
        state: Optimizer state with the same names and shapes
        learning_rate: Step size
        decay: Squared-gradient decay rho
        epsilon: Denominator offset

    Returns:
        (new values, new state); inputs are left untouched

    Raises:
        ValidationError: If names or shapes do not match
    """
    if set(values) != set(grads) or set(values) != set(state.cache):
        context = ErrorContext(
            operation="rmsprop_step",
            error_code=ErrorCode.VALIDATION_SHAPE,
            details={"params": sorted(values), "grads": sorted(grads),
                     "state": sorted(state.cache)}
        )
        raise ValidationError("Parameter, gradient and optimizer names differ", context=context)

    new_values: Dict[str, np.ndarray] = {}
    new_cache: Dict[str, np.ndarray] = {}
    for name, value in values.items():
        g = np.asarray(grads[name], dtype=float)
        if g.shape != np.shape(value) or g.shape != state.cache[name].shape:
            raise ValidationError(
                f"Gradient shape mismatch for {name}",
                operation="rmsprop_step",
                details={"param": np.shape(value), "grad": g.shape,
                         "cache": state.cache[name].shape}
            )
        cache = decay * state.cache[name] + (1.0 - decay) * g * g
        new_cache[name] = cache
        new_values[name] = value - learning_rate * g / (np.sqrt(cache) + epsilon)
    return new_values, RMSpropState(new_cache, state.steps + 1)

def rmsprop_step(
    params: ModelParams,
    grads: Mapping[str, np.ndarray],
    state: RMSpropState,
    config: TrainConfig
) -> Tuple[ModelParams, RMSpropState]:
    """RMSprop step on model parameters using the settings of a TrainConfig."""
    values, state = rmsprop_update(
        params.values, grads, state,
        config.learning_rate, config.rmsprop_decay, config.rmsprop_epsilon
    )
    return params.with_values(values), state
