"""Feed-forward survival network with flexible and proportional-hazards heads.

Parameters live in `ModelParams` as a flat, ordered mapping from names such as
``"0.kernel"``, ``"0.bias"`` or ``"2.baseline"`` to numpy arrays. The forward
pass runs dense layers and then one of two heads:

- flexible head: cond_surv = sigmoid(a @ W + b), one output per interval
- proportional-hazards head: a bias-free single-unit layer yields the linear
  predictor xb, and cond_surv_j = s_j ** exp(xb), where s_j = sigmoid(gamma_j)
  is the baseline probability of surviving interval j

The backward pass is the exact chain rule through the clamped likelihood,
both heads and the dense layers, plus the L2 penalty on kernel weights.

Path: survnet/nnet/network.py
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from survnet.common.enums import Activation, HeadKind, LayerKind
from survnet.common.errors import (
    ValidationError, ModelFormatError, OutOfHorizonError, ErrorCode, ErrorContext
)
from survnet.config.train import LayerSpec
from survnet.survival.likelihood import (
    EPSILON, SurvivalCurve, batch_loss, clamp, loss_grad, null_hazards
)
from survnet.survival.timegrid import EncodedTarget, TimeGrid
from survnet.utils.repr import compact_repr

logger = logging.getLogger(__name__)

# exp() of the linear predictor is bounded to keep the power finite
MAX_LINEAR_PREDICTOR = 50.0

def sigmoid(x: np.ndarray) -> np.ndarray:
    return np.exp(-np.logaddexp(0.0, -x))

def log_sigmoid(x: np.ndarray) -> np.ndarray:
    return -np.logaddexp(0.0, -x)

def logit(p: np.ndarray) -> np.ndarray:
    return np.log(p) - np.log1p(-p)

@dataclass(frozen=True, eq=False)
class ModelParams:
    """Network architecture, grid and weights.

    Attributes:
        layers: Layer specifications in forward order
        grid: Interval grid the head predicts over
        values: Parameter arrays keyed by ``"<layer>.<kernel|bias|baseline>"``
        feature_names: Covariate names in input order
        feature_means: Per-feature centering applied before the network
        feature_scales: Per-feature scaling applied before the network
    """
    layers: Tuple[LayerSpec, ...]
    grid: TimeGrid
    values: Dict[str, np.ndarray]
    feature_names: Tuple[str, ...] = ()
    feature_means: Optional[np.ndarray] = None
    feature_scales: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        self.validate()

    @property
    def head(self) -> HeadKind:
        if self.layers[-1].kind == LayerKind.PROPHAZ_HEAD:
            return HeadKind.PROPORTIONAL_HAZARDS
        return HeadKind.FLEXIBLE

    @property
    def input_dim(self) -> int:
        return self.layers[0].input_dim

    def kernel_names(self) -> List[str]:
        return [name for name in self.values if name.endswith(".kernel")]

    def with_values(self, values: Dict[str, np.ndarray]) -> "ModelParams":
        """Copy with replaced parameter arrays."""
        return replace(self, values={k: np.asarray(values[k], dtype=float) for k in self.values})

    def expected_shapes(self) -> Dict[str, Tuple[int, ...]]:
        """Parameter shapes implied by the layer specifications."""
        shapes: Dict[str, Tuple[int, ...]] = {}
        for i, spec in enumerate(self.layers):
            if spec.kind == LayerKind.PROPHAZ_HEAD:
                shapes[f"{i}.baseline"] = (spec.output_dim,)
                continue
            shapes[f"{i}.kernel"] = (spec.input_dim, spec.output_dim)
            if spec.use_bias:
                shapes[f"{i}.bias"] = (spec.output_dim,)
        return shapes

    def validate(self) -> None:
        """Check layer chaining and parameter shapes.

        Raises:
            ModelFormatError: If the parameters do not fit the architecture
        """
        problems = []
        if not self.layers:
            problems.append("no layers")
        for prev, nxt in zip(self.layers, self.layers[1:]):
            if prev.output_dim != nxt.input_dim:
                problems.append(f"layer widths {prev.output_dim} -> {nxt.input_dim} do not chain")
        if any(spec.kind != LayerKind.DENSE for spec in self.layers[:-1]):
            problems.append("output heads may only appear last")
        if self.layers and self.layers[-1].kind == LayerKind.DENSE:
            problems.append("last layer must be an output head")
        if self.layers and self.layers[-1].output_dim != self.grid.n:
            problems.append(f"head width {self.layers[-1].output_dim} != {self.grid.n} intervals")
        expected = self.expected_shapes() if not problems else {}
        if expected and set(expected) != set(self.values):
            problems.append(f"parameter names {sorted(self.values)} != {sorted(expected)}")
        for name, shape in expected.items():
            if name in self.values and np.shape(self.values[name]) != shape:
                problems.append(f"{name} has shape {np.shape(self.values[name])}, expected {shape}")
        if problems:
            context = ErrorContext(
                operation="validate_params",
                error_code=ErrorCode.MODEL_SHAPE,
                details={"problems": "; ".join(problems)}
            )
            raise ModelFormatError("Model parameters are inconsistent", context=context)

    def standardize(self, covariates: np.ndarray) -> np.ndarray:
        """Apply the stored feature centering and scaling."""
        x = np.asarray(covariates, dtype=float)
        if self.feature_means is not None:
            x = x - self.feature_means
        if self.feature_scales is not None:
            x = x / self.feature_scales
        return x

    def __repr__(self) -> str:
        return compact_repr(self, fields=["head", "grid", "feature_names", "values"])

def init_params(
    layers: Tuple[LayerSpec, ...],
    grid: TimeGrid,
    rng: np.random.Generator,
    targets: Optional[EncodedTarget] = None,
    **metadata
) -> ModelParams:
    """Initialize weights for an architecture.

    Kernels are drawn uniformly from +-sqrt(6 / (fan_in + fan_out)), biases
    start at zero, and proportional-hazards baselines start at the null-model
    (Kaplan-Meier) estimate from `targets` when given.

    Args:
        layers: Layer specifications
        grid: Interval grid
        rng: Seeded generator
        targets: Encoded training outcomes for the baseline start
        **metadata: feature_names / feature_means / feature_scales

    Returns:
        Fresh ModelParams
    """
    values: Dict[str, np.ndarray] = {}
    for i, spec in enumerate(layers):
        if spec.kind == LayerKind.PROPHAZ_HEAD:
            if targets is not None:
                hazards = np.clip(null_hazards(targets), 1e-4, 1.0 - 1e-4)
            else:
                hazards = np.full(spec.output_dim, 0.5)
            values[f"{i}.baseline"] = logit(1.0 - hazards)
            continue
        limit = np.sqrt(6.0 / (spec.input_dim + spec.output_dim))
        values[f"{i}.kernel"] = rng.uniform(-limit, limit, (spec.input_dim, spec.output_dim))
        if spec.use_bias:
            values[f"{i}.bias"] = np.zeros(spec.output_dim)
    return ModelParams(layers=tuple(layers), grid=grid, values=values, **metadata)

def _activate(z: np.ndarray, activation: Activation) -> np.ndarray:
    if activation == Activation.RECTIFIER:
        return np.maximum(z, 0.0)
    if activation == Activation.SIGMOID:
        return sigmoid(z)
    return z

def _activation_grad(z: np.ndarray, a: np.ndarray, activation: Activation) -> np.ndarray:
    if activation == Activation.RECTIFIER:
        return (z > 0).astype(float)
    if activation == Activation.SIGMOID:
        return a * (1.0 - a)
    return np.ones_like(z)

@dataclass
class _Trace:
    """Intermediate values of one forward pass."""
    inputs: List[np.ndarray] = field(default_factory=list)
    pre_activations: List[np.ndarray] = field(default_factory=list)
    outputs: List[np.ndarray] = field(default_factory=list)

def _check_input(params: ModelParams, covariates: np.ndarray) -> np.ndarray:
    x = np.asarray(covariates, dtype=float)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    if x.ndim != 2 or x.shape[1] != params.input_dim:
        context = ErrorContext(
            operation="forward",
            error_code=ErrorCode.VALIDATION_SHAPE,
            details={"expected_width": params.input_dim, "shape": x.shape}
        )
        raise ValidationError("Covariate width does not match the network", context=context)
    return x

def _forward_pass(params: ModelParams, x: np.ndarray) -> Tuple[np.ndarray, _Trace]:
    """Unclamped cond_surv of shape (N, n) and the trace for backward."""
    trace = _Trace()
    a = x
    for i, spec in enumerate(params.layers):
        trace.inputs.append(a)
        if spec.kind == LayerKind.PROPHAZ_HEAD:
            xb = np.clip(a[:, 0], -MAX_LINEAR_PREDICTOR, MAX_LINEAR_PREDICTOR)
            log_base = log_sigmoid(params.values[f"{i}.baseline"])
            z = np.exp(xb)[:, None] * log_base[None, :]
            a = np.exp(z)
        else:
            z = a @ params.values[f"{i}.kernel"]
            if spec.use_bias:
                z = z + params.values[f"{i}.bias"]
            a = _activate(z, spec.activation)
        trace.pre_activations.append(z)
        trace.outputs.append(a)
    return a, trace

def forward(params: ModelParams, covariates: np.ndarray) -> SurvivalCurve:
    """Predicted survival curves for a covariate matrix.

    Inputs are used as given; `predict` applies the stored standardization.

    Args:
        params: Model parameters
        covariates: Matrix of shape (N, d)

    Returns:
        Batch curve of shape (N, n)

    Raises:
        ValidationError: If the covariate width does not match
    """
    x = _check_input(params, covariates)
    raw, _ = _forward_pass(params, x)
    c = clamp(raw)
    return SurvivalCurve(c, np.cumprod(c, axis=1))

def l2_penalty(params: ModelParams, l2_strength: float) -> float:
    """lambda / 2 times the squared norm of all kernel weights."""
    if l2_strength == 0:
        return 0.0
    return 0.5 * l2_strength * sum(
        float(np.sum(params.values[name] ** 2)) for name in params.kernel_names()
    )

def objective(
    params: ModelParams, covariates: np.ndarray, targets: EncodedTarget, l2_strength: float = 0.0
) -> float:
    """Mean negative log-likelihood plus the L2 penalty."""
    return batch_loss(forward(params, covariates), targets) + l2_penalty(params, l2_strength)

def loss_and_grad(
    params: ModelParams,
    covariates: np.ndarray,
    targets: EncodedTarget,
    l2_strength: float = 0.0
) -> Tuple[float, Dict[str, np.ndarray]]:
    """Objective value and its gradient with respect to every parameter.

    Args:
        params: Model parameters
        covariates: Matrix of shape (N, d)
        targets: Encoded outcomes for the N rows
        l2_strength: L2 penalty on kernel weights

    Returns:
        (objective, gradients keyed like params.values)

    Raises:
        ValidationError: If shapes disagree
    """
    x = _check_input(params, covariates)
    targets = targets.as_batch()
    if targets.surv_s.shape != (x.shape[0], params.grid.n):
        raise ValidationError(
            "Targets do not match the batch",
            operation="backward",
            details={"targets": targets.surv_s.shape, "batch": (x.shape[0], params.grid.n)}
        )
    raw, trace = _forward_pass(params, x)
    c = clamp(raw)
    curve = SurvivalCurve(c, np.cumprod(c, axis=1))
    value = batch_loss(curve, targets) + l2_penalty(params, l2_strength)

    inside = (raw >= EPSILON) & (raw <= 1.0 - EPSILON)
    upstream = loss_grad(curve, targets) * inside / x.shape[0]
    grads: Dict[str, np.ndarray] = {}

    for i in reversed(range(len(params.layers))):
        spec = params.layers[i]
        a_in = trace.inputs[i]
        z = trace.pre_activations[i]
        out = trace.outputs[i]

        if spec.kind == LayerKind.PROPHAZ_HEAD:
            gamma = params.values[f"{i}.baseline"]
            raw_xb = a_in[:, 0]
            e = np.exp(np.clip(raw_xb, -MAX_LINEAR_PREDICTOR, MAX_LINEAR_PREDICTOR))
            d_z = upstream * out
            grads[f"{i}.baseline"] = np.sum(d_z * e[:, None], axis=0) * (1.0 - sigmoid(gamma))
            d_xb = np.sum(d_z * log_sigmoid(gamma)[None, :], axis=1) * e
            d_xb = np.where(np.abs(raw_xb) <= MAX_LINEAR_PREDICTOR, d_xb, 0.0)
            upstream = d_xb[:, None]
            continue

        d_z = upstream * _activation_grad(z, out, spec.activation)
        kernel = params.values[f"{i}.kernel"]
        grads[f"{i}.kernel"] = a_in.T @ d_z + l2_strength * kernel
        if spec.use_bias:
            grads[f"{i}.bias"] = d_z.sum(axis=0)
        upstream = d_z @ kernel.T

    return value, {name: grads[name] for name in params.values}

def backward(
    params: ModelParams,
    covariates: np.ndarray,
    targets: EncodedTarget,
    l2_strength: float = 0.0
) -> Dict[str, np.ndarray]:
    """Gradient of batch_loss + lambda * ||kernels||^2 / 2 for every parameter."""
    return loss_and_grad(params, covariates, targets, l2_strength)[1]

def predict(params: ModelParams, covariates: np.ndarray) -> SurvivalCurve:
    """Survival curves for raw (unstandardized) covariates."""
    return forward(params, params.standardize(covariates))

def survival_at(curve: SurvivalCurve, grid: TimeGrid, t: float) -> float | np.ndarray:
    """Survival probability at time t by linear interpolation between boundaries.

    S(0) = 1 and S(t_j) = cum_surv[j]; the curve is not extrapolated past t_n.

    Args:
        curve: Predicted curve(s)
        grid: Grid the curve was predicted on
        t: Time in days, 0 <= t <= t_n

    Returns:
        Scalar for one subject, array for a batch

    Raises:
        ValidationError: If t is negative
        OutOfHorizonError: If t is past the last boundary
    """
    if t < 0:
        raise ValidationError("Time must be nonnegative", operation="survival_at",
                              details={"time": t})
    if t > grid.horizon:
        raise OutOfHorizonError(
            "Survival is not predicted past the end of the last interval",
            operation="survival_at",
            details={"time": t, "horizon": grid.horizon}
        )
    cum = np.atleast_2d(curve.cum_surv)
    bounds = grid.boundaries()
    j = int(np.searchsorted(bounds, t, side="right")) - 1
    j = min(j, grid.n - 1)
    left = np.ones(cum.shape[0]) if j == 0 else cum[:, j - 1]
    right = cum[:, j]
    weight = (t - bounds[j]) / (bounds[j + 1] - bounds[j])
    values = left + weight * (right - left)
    return float(values[0]) if curve.cum_surv.ndim == 1 else values

def median_survival(curve: SurvivalCurve, grid: TimeGrid) -> np.ndarray:
    """Time at which the interpolated curve reaches 0.5 (NaN if it never does)."""
    cum = np.atleast_2d(curve.cum_surv)
    bounds = grid.boundaries()
    full = np.hstack([np.ones((cum.shape[0], 1)), cum])
    medians = np.full(cum.shape[0], np.nan)
    for row, values in enumerate(full):
        below = np.flatnonzero(values <= 0.5)
        if below.size == 0:
            continue
        k = below[0]
        s0, s1 = values[k - 1], values[k]
        medians[row] = bounds[k - 1] + (s0 - 0.5) / (s0 - s1) * (bounds[k] - bounds[k - 1])
    return medians
