"""Survival curves and the discrete-time survival likelihood.

The network predicts, for every interval, the conditional probability of
surviving that interval given survival to its start (1 - h_i). Cumulative
products of those values give the survival function at each interval's upper
limit. The per-subject log-likelihood is computed from the encoded target as

    sum_i ln(1 + surv_s(i) * (c_i - 1)) + ln(1 - surv_f(i) * c_i)

which equals the product of surviving every interval before the failure times
failing in it (uncensored), or of surviving every credited interval
(censored). Probabilities are clamped to [EPSILON, 1 - EPSILON] before any
logarithm is taken.

Also provided: the per-interval form of the likelihood from death and at-risk
counts, the null-model hazard estimate d_j / r_j, and the squared-error loss
of Brown et al. for comparison.

Path: survnet/survival/likelihood.py
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from survnet.common.errors import ValidationError, ErrorCode, ErrorContext
from survnet.survival.timegrid import EncodedTarget

logger = logging.getLogger(__name__)

EPSILON = 1e-7

def clamp(probabilities: np.ndarray) -> np.ndarray:
    """Clamp probabilities to [EPSILON, 1 - EPSILON]."""
    return np.clip(probabilities, EPSILON, 1.0 - EPSILON)

@dataclass(frozen=True, eq=False)
class SurvivalCurve:
    """Conditional and cumulative interval survival for one subject or a batch.

    Arrays have shape (n,) for one subject and (N, n) for a batch.

    Attributes:
        cond_surv: Clamped probability of surviving each interval (1 - h_i)
        cum_surv: Probability of surviving through the end of each interval
    """
    cond_surv: np.ndarray
    cum_surv: np.ndarray

    @property
    def n_intervals(self) -> int:
        return self.cond_surv.shape[-1]

    @property
    def n_subjects(self) -> int:
        return 1 if self.cond_surv.ndim == 1 else self.cond_surv.shape[0]

    @property
    def hazards(self) -> np.ndarray:
        """Conditional failure probability per interval."""
        return 1.0 - self.cond_surv

def survival_curve(cond_surv: np.ndarray | Iterable[float]) -> SurvivalCurve:
    """Build a curve from conditional interval survival probabilities.

    Args:
        cond_surv: Values of shape (n,) or (N, n)

    Returns:
        Curve with cum_surv[..., j] = prod_{i <= j} cond_surv[..., i]

    Raises:
        ValidationError: If there are no intervals
    """
    values = np.asarray(cond_surv, dtype=float)
    if values.ndim == 0 or values.shape[-1] == 0:
        raise ValidationError("A survival curve needs at least one interval",
                              operation="survival_curve")
    values = clamp(values)
    return SurvivalCurve(values, np.cumprod(values, axis=-1))

def _check_pair(curve: SurvivalCurve, target: EncodedTarget, operation: str) -> None:
    if curve.cond_surv.shape[-1] != target.surv_s.shape[-1]:
        context = ErrorContext(
            operation=operation,
            error_code=ErrorCode.VALIDATION_SHAPE,
            details={"curve": curve.cond_surv.shape, "target": target.surv_s.shape}
        )
        raise ValidationError("Curve and target lengths differ", context=context)
    if curve.cond_surv.ndim == 2 and target.surv_s.ndim == 2 \
            and curve.cond_surv.shape[0] != target.surv_s.shape[0]:
        raise ValidationError(
            "Curve and target batches have different sizes",
            operation=operation,
            details={"curves": curve.cond_surv.shape[0], "targets": target.surv_s.shape[0]}
        )

def loglik(curve: SurvivalCurve, target: EncodedTarget) -> float | np.ndarray:
    """Log-likelihood of encoded outcomes under a predicted curve.

    Args:
        curve: Predicted curve(s)
        target: Encoded outcome(s) of matching length

    Returns:
        Scalar for single subjects, one value per row for batches

    Raises:
        ValidationError: If lengths differ
    """
    _check_pair(curve, target, "loglik")
    c = curve.cond_surv
    s, f = target.surv_s, target.surv_f
    terms = np.log(1.0 + s * (c - 1.0)) + np.log(1.0 - f * c)
    total = terms.sum(axis=-1)
    return float(total) if np.ndim(total) == 0 else total

def batch_loss(curves: SurvivalCurve, targets: EncodedTarget) -> float:
    """Mean negative log-likelihood over a batch.

    Raises:
        ValidationError: If the batch is empty or shapes disagree
    """
    curves, targets = _as_batch(curves, targets, "batch_loss")
    return float(-np.mean(loglik(curves, targets)))

def loss_grad(curve: SurvivalCurve, target: EncodedTarget) -> np.ndarray:
    """Derivative of -loglik with respect to each cond_surv entry.

    Evaluated on the clamped curve; callers scale by 1/N for batch_loss.

    Raises:
        ValidationError: If lengths differ
    """
    _check_pair(curve, target, "loss_grad")
    c = curve.cond_surv
    s, f = target.surv_s, target.surv_f
    return -s / (1.0 + s * (c - 1.0)) + f / (1.0 - f * c)

def brown_loss(curves: SurvivalCurve, targets: EncodedTarget) -> float:
    """Squared-error loss of Brown et al., summed over intervals and subjects.

    A subject counts as a failure in interval j when surv_f(j) = 1 and as a
    survivor when surv_s(j) = 1. Failures contribute (1 - h)^2 / 2 and
    survivors h^2 / 2.

    Raises:
        ValidationError: If the batch is empty or shapes disagree
    """
    curves, targets = _as_batch(curves, targets, "brown_loss")
    h = curves.hazards
    return float(0.5 * np.sum(targets.surv_f * (1.0 - h) ** 2 + targets.surv_s * h ** 2))

def risk_table(targets: EncodedTarget) -> Tuple[np.ndarray, np.ndarray]:
    """Failures d_j and subjects in view r_j per interval.

    A subject is in view during interval j when it survived through it or
    failed in it; censored subjects without credit for j are not.

    Returns:
        (deaths, at_risk) arrays of length n
    """
    targets = targets.as_batch()
    deaths = targets.surv_f.sum(axis=0)
    at_risk = deaths + targets.surv_s.sum(axis=0)
    return deaths, at_risk

def null_hazards(targets: EncodedTarget) -> np.ndarray:
    """Maximum-likelihood hazards without covariates, d_j / r_j.

    Intervals nobody is in view for get hazard 0.
    """
    deaths, at_risk = risk_table(targets)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(at_risk > 0, deaths / np.maximum(at_risk, 1.0), 0.0)

def interval_loglik(hazards: np.ndarray, deaths: np.ndarray, at_risk: np.ndarray) -> float:
    """Log-likelihood summed interval by interval.

    sum_j d_j ln h_j + (r_j - d_j) ln(1 - h_j), with hazards clamped.
    """
    h = clamp(np.asarray(hazards, dtype=float))
    deaths = np.asarray(deaths, dtype=float)
    at_risk = np.asarray(at_risk, dtype=float)
    return float(np.sum(deaths * np.log(h) + (at_risk - deaths) * np.log(1.0 - h)))

def _as_batch(
    curves: SurvivalCurve, targets: EncodedTarget, operation: str
) -> Tuple[SurvivalCurve, EncodedTarget]:
    curves = SurvivalCurve(np.atleast_2d(curves.cond_surv), np.atleast_2d(curves.cum_surv))
    targets = targets.as_batch()
    if curves.cond_surv.shape[0] == 0 or targets.surv_s.shape[0] == 0:
        raise ValidationError("Batch is empty", operation=operation)
    _check_pair(curves, targets, operation)
    return curves, targets
