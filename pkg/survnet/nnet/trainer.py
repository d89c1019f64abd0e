"""Minibatch training and cross-validated regularization selection.

Training encodes the cohort on the grid, standardizes covariates with the
training-set mean and spread, initializes weights from a seeded Philox stream
and runs a fixed budget of RMSprop epochs over shuffled minibatches. The last
partial minibatch of each epoch is used. After every epoch the full-data
objective is recorded, so the returned loss trace is comparable between runs
with different batch sizes.

Path: survnet/nnet/trainer.py
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from survnet.common.errors import (
    ValidationError, TrainingDivergedError, ErrorCode, ErrorContext
)
from survnet.common.tracking import TrackerStats, TrainingTracker
from survnet.config.train import DEFAULT_L2_CANDIDATES, LayerSpec, NetworkSpec, TrainConfig
from survnet.nnet.network import ModelParams, init_params, loss_and_grad, objective, predict
from survnet.nnet.optim import RMSpropState, rmsprop_step
from survnet.survival.data import SurvivalData
from survnet.survival.likelihood import loglik
from survnet.survival.timegrid import TimeGrid, encode_batch
from survnet.utils.rng import make_rng

logger = logging.getLogger(__name__)

@dataclass(frozen=True, eq=False)
class TrainResult:
    """Outcome of a training run.

    Attributes:
        params: Final parameters
        losses: Full-data objective after each epoch
        stats: Summary of the run
    """
    params: ModelParams
    losses: List[float]
    stats: Optional[TrackerStats] = None

@dataclass(frozen=True)
class L2Selection:
    """Result of cross-validated L2 selection.

    Attributes:
        l2_strength: Candidate with the best mean held-out log-likelihood
        scores: Mean held-out log-likelihood per subject, per candidate
        folds: Number of folds used
    """
    l2_strength: float
    scores: Dict[float, float] = field(default_factory=dict)
    folds: int = 10

def fit_scaling(covariates: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Per-feature mean and standard deviation; constant columns get scale 1."""
    x = np.asarray(covariates, dtype=float)
    means = x.mean(axis=0)
    scales = x.std(axis=0)
    return means, np.where(scales > 0, scales, 1.0)

def _resolve_layers(
    layers: Sequence[LayerSpec] | NetworkSpec, data: SurvivalData, grid: TimeGrid
) -> Tuple[LayerSpec, ...]:
    if isinstance(layers, NetworkSpec):
        return layers.layers(data.n_features, grid.n)
    layers = tuple(layers)
    if not layers:
        raise ValidationError("At least one layer is required", operation="train")
    if layers[0].input_dim != data.n_features:
        raise ValidationError(
            "First layer width does not match the number of covariates",
            operation="train",
            details={"input_dim": layers[0].input_dim, "features": data.n_features}
        )
    if layers[-1].output_dim != grid.n:
        raise ValidationError(
            "Output head width does not match the number of intervals",
            operation="train",
            details={"output_dim": layers[-1].output_dim, "intervals": grid.n}
        )
    return layers

def train(
    data: SurvivalData,
    grid: TimeGrid,
    layers: Sequence[LayerSpec] | NetworkSpec,
    config: Optional[TrainConfig] = None,
    *,
    initial_params: Optional[ModelParams] = None,
    standardize: bool = True,
    tracker: Optional[TrainingTracker] = None
) -> TrainResult:
    """Fit a survival network by minibatch RMSprop.

    Args:
        data: Training cohort
        grid: Interval grid
        layers: Layer specifications, or an architecture to expand
        config: Optimizer settings (defaults to TrainConfig())
        initial_params: Continue from these parameters instead of a fresh
            initialization; their stored feature scaling is kept
        standardize: Center and scale covariates with training statistics
        tracker: Receives the per-epoch loss; created when not given

    Returns:
        TrainResult with final parameters and the loss trace

    Raises:
        ValidationError: If the dataset is empty or layers do not fit it
        TrainingDivergedError: If the loss becomes non-finite
    """
    config = config or TrainConfig()
    if data.n_subjects == 0:
        raise ValidationError("Cannot train on an empty dataset", operation="train")
    layers = _resolve_layers(layers, data, grid)
    rng = make_rng(config.rng_seed)
    targets = encode_batch(data.times, data.events, grid)

    if initial_params is not None:
        if initial_params.grid != grid or initial_params.layers != layers:
            context = ErrorContext(
                operation="train",
                error_code=ErrorCode.VALIDATION_SHAPE,
                details={"model_head": initial_params.head.value, "model_intervals": initial_params.grid.n}
            )
            raise ValidationError("Initial parameters do not match the architecture or grid",
                                  context=context)
        params = initial_params
        logger.info("Warm start from existing parameters")
    else:
        means, scales = fit_scaling(data.covariates) if standardize else (None, None)
        params = init_params(
            layers, grid, rng, targets,
            feature_names=data.feature_names, feature_means=means, feature_scales=scales
        )
    x = params.standardize(data.covariates)

    tracker = tracker or TrainingTracker(config.epochs)
    state = RMSpropState.zeros_like(params.values)
    n = data.n_subjects
    logger.info(
        "Training %s head on %d subjects, %d intervals, %d epochs (batch %d, lr %g, l2 %g)",
        params.head.value, n, grid.n, config.epochs, config.batch_size,
        config.learning_rate, config.l2_strength
    )

    tracker.start()
    try:
        for epoch in range(1, config.epochs + 1):
            order = rng.permutation(n)
            for start in range(0, n, config.batch_size):
                index = order[start:start + config.batch_size]
                loss, grads = loss_and_grad(params, x[index], targets.take(index), config.l2_strength)
                if not math.isfinite(loss):
                    raise TrainingDivergedError(epoch, loss, operation="train")
                params, state = rmsprop_step(params, grads, state, config)
            epoch_loss = objective(params, x, targets, config.l2_strength)
            if not math.isfinite(epoch_loss):
                raise TrainingDivergedError(epoch, epoch_loss, operation="train")
            tracker.record(epoch, epoch_loss)
    except Exception:
        tracker.fail()
        raise
    tracker.complete()

    return TrainResult(params=params, losses=tracker.losses(), stats=tracker.get_stats())

def heldout_loglik(params: ModelParams, data: SurvivalData) -> float:
    """Mean per-subject log-likelihood of a cohort under a fitted model."""
    curves = predict(params, data.covariates)
    targets = encode_batch(data.times, data.events, params.grid)
    return float(np.mean(loglik(curves, targets)))

def select_l2(
    data: SurvivalData,
    grid: TimeGrid,
    layers: Sequence[LayerSpec] | NetworkSpec,
    config: Optional[TrainConfig] = None,
    candidates: Sequence[float] = DEFAULT_L2_CANDIDATES,
    folds: int = 10
) -> L2Selection:
    """Choose the L2 strength by k-fold cross-validation.

    Folds are a seeded partition of the cohort. Each candidate is scored by
    the held-out log-likelihood pooled over all folds and divided by the
    cohort size; ties go to the earlier candidate.

    Args:
        data: Cohort to cross-validate on
        grid: Interval grid
        layers: Layer specifications or architecture
        config: Training settings; l2_strength is replaced per candidate
        candidates: L2 strengths to compare
        folds: Number of folds

    Returns:
        L2Selection with the winner and every candidate's score

    Raises:
        ValidationError: If there are no candidates, fewer than 2 folds or
            fewer subjects than folds
    """
    config = config or TrainConfig()
    candidates = [float(c) for c in candidates]
    if not candidates:
        raise ValidationError("No L2 candidates given", operation="select_l2")
    if folds < 2:
        raise ValidationError("Cross-validation needs at least 2 folds",
                              operation="select_l2", details={"folds": folds})
    if data.n_subjects < folds:
        raise ValidationError(
            "Fewer subjects than folds",
            operation="select_l2",
            details={"subjects": data.n_subjects, "folds": folds}
        )

    rng = make_rng(config.rng_seed)
    parts = np.array_split(rng.permutation(data.n_subjects), folds)
    scores: Dict[float, float] = {}
    for l2 in candidates:
        fold_config = config.merged({"l2_strength": l2})
        total = 0.0
        for k, held_out in enumerate(parts):
            fit_index = np.concatenate([p for i, p in enumerate(parts) if i != k])
            result = train(data.subset(fit_index), grid, layers, fold_config,
                           tracker=TrainingTracker(fold_config.epochs, log_every=0))
            total += heldout_loglik(result.params, data.subset(held_out)) * len(held_out)
        scores[l2] = total / data.n_subjects
        logger.info("L2 %g: held-out log-likelihood %.6f per subject", l2, scores[l2])

    best = max(candidates, key=lambda c: (scores[c], -candidates.index(c)))
    logger.info("Selected L2 strength %g", best)
    return L2Selection(l2_strength=best, scores=scores, folds=folds)
