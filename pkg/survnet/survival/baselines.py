"""Classical survival estimators.

- Kaplan-Meier product-limit survival curve and Nelson-Aalen cumulative hazard
- Cox proportional-hazards regression fitted by Newton-Raphson on the Breslow
  partial likelihood, with the Breslow baseline cumulative hazard
- log(-log S) tables for checking the proportional-hazards assumption

At tied times deaths are processed before censorings: a subject censored at t
is still at risk for deaths at t.

Path: survnet/survival/baselines.py
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from survnet.common.errors import (
    ValidationError, StateError, SeparationError, DegenerateCovariateError,
    ErrorCode, ErrorContext
)
from survnet.survival.data import SurvivalData
from survnet.survival.likelihood import SurvivalCurve
from survnet.survival.timegrid import TimeGrid

logger = logging.getLogger(__name__)

def _check_outcomes(times, events, operation: str) -> Tuple[np.ndarray, np.ndarray]:
    times = np.asarray(times, dtype=float).reshape(-1)
    events = np.asarray(events).astype(bool).reshape(-1)
    if times.size == 0:
        raise ValidationError("No subjects given", operation=operation)
    if times.shape != events.shape:
        raise ValidationError("times and events must have equal length", operation=operation,
                              details={"times": times.size, "events": events.size})
    if np.any(~(times >= 0)):
        raise ValidationError("Follow-up times must be nonnegative", operation=operation)
    return times, events

def _event_counts(times: np.ndarray, events: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Distinct event times with deaths d_k and at-risk counts r_k = #(time >= t_k)."""
    event_times, deaths = np.unique(times[events], return_counts=True)
    ordered = np.sort(times)
    at_risk = times.size - np.searchsorted(ordered, event_times, side="left")
    return event_times, deaths.astype(float), at_risk.astype(float)

@dataclass(frozen=True, eq=False)
class StepSurvival:
    """Right-continuous survival step function with S(0) = 1.

    Attributes:
        event_times: Ascending distinct event times
        surv_values: Survival just after each event time
        last_time: Largest observed follow-up time in the sample
    """
    event_times: np.ndarray
    surv_values: np.ndarray
    last_time: float = np.inf

    def __call__(self, t: float | np.ndarray) -> float | np.ndarray:
        index = np.searchsorted(self.event_times, t, side="right")
        values = np.concatenate(([1.0], self.surv_values))[index]
        return float(values) if np.ndim(values) == 0 else values

    def left_limit(self, t: float | np.ndarray) -> float | np.ndarray:
        """S(t-), the value just before t."""
        index = np.searchsorted(self.event_times, t, side="left")
        values = np.concatenate(([1.0], self.surv_values))[index]
        return float(values) if np.ndim(values) == 0 else values

    def median(self) -> float:
        """Smallest event time with S <= 0.5, NaN if the curve stays above."""
        below = np.flatnonzero(self.surv_values <= 0.5)
        return float(self.event_times[below[0]]) if below.size else float("nan")

@dataclass(frozen=True, eq=False)
class CumulativeHazard:
    """Right-continuous cumulative hazard step function with H(0) = 0."""
    event_times: np.ndarray
    values: np.ndarray

    def __call__(self, t: float | np.ndarray) -> float | np.ndarray:
        index = np.searchsorted(self.event_times, t, side="right")
        values = np.concatenate(([0.0], self.values))[index]
        return float(values) if np.ndim(values) == 0 else values

def kaplan_meier(times: Sequence[float] | np.ndarray, events: Sequence[bool] | np.ndarray) -> StepSurvival:
    """Product-limit estimate of the survival function.

    Args:
        times: Follow-up times
        events: Event indicators

    Returns:
        StepSurvival with S(t) = prod_{t_k <= t} (1 - d_k / r_k)

    Raises:
        ValidationError: If there are no subjects
    """
    times, events = _check_outcomes(times, events, "kaplan_meier")
    event_times, deaths, at_risk = _event_counts(times, events)
    return StepSurvival(event_times, np.cumprod(1.0 - deaths / at_risk), float(times.max()))

def nelson_aalen(times: Sequence[float] | np.ndarray, events: Sequence[bool] | np.ndarray) -> CumulativeHazard:
    """Nelson-Aalen cumulative hazard, H(t) = sum_{t_k <= t} d_k / r_k."""
    times, events = _check_outcomes(times, events, "nelson_aalen")
    event_times, deaths, at_risk = _event_counts(times, events)
    return CumulativeHazard(event_times, np.cumsum(deaths / at_risk))

@dataclass(frozen=True, eq=False)
class CoxFit:
    """Fitted Cox model.

    Attributes:
        beta: Coefficients, one per covariate
        loglik_trace: Partial log-likelihood at the start and after each iteration
        converged: Whether Newton-Raphson met the stopping rule
        iterations: Newton iterations performed
        baseline: Breslow cumulative baseline hazard (converged fits only)
        feature_names: Covariate names
    """
    beta: np.ndarray
    loglik_trace: List[float] = field(default_factory=list)
    converged: bool = False
    iterations: int = 0
    baseline: Optional[CumulativeHazard] = None
    feature_names: Tuple[str, ...] = ()

    @property
    def loglik(self) -> float:
        return self.loglik_trace[-1] if self.loglik_trace else float("nan")

class _PartialLikelihood:
    """Breslow partial likelihood with its gradient and information matrix.

    Risk-set sums are reverse cumulative sums over subjects sorted by time,
    so memory grows linearly with the cohort.
    """

    def __init__(self, times: np.ndarray, events: np.ndarray, x: np.ndarray):
        order = np.argsort(times, kind="stable")
        self.times = times[order]
        self.events = events[order]
        self.x = x[order]
        # first position of each subject's tied time block
        first = np.searchsorted(self.times, self.times, side="left")
        self.risk_start = first[self.events]
        self.x_events = self.x[self.events]

    def evaluate(self, beta: np.ndarray, derivatives: bool = True):
        eta = self.x @ beta
        shift = eta.max()
        w = np.exp(eta - shift)
        risk_w = np.cumsum(w[::-1])[::-1]
        start = self.risk_start
        value = float(np.sum(eta[self.events] - shift - np.log(risk_w[start])))
        if not derivatives:
            return value
        risk_wx = np.cumsum((w[:, None] * self.x)[::-1], axis=0)[::-1]
        xbar = risk_wx[start] / risk_w[start][:, None]
        grad = self.x_events.sum(axis=0) - xbar.sum(axis=0)
        weights = np.bincount(start, weights=1.0 / risk_w[start], minlength=len(w))
        exposure = w * np.cumsum(weights)
        info = (self.x * exposure[:, None]).T @ self.x - xbar.T @ xbar
        return value, grad, info

def _breslow(times: np.ndarray, events: np.ndarray, risk: np.ndarray) -> CumulativeHazard:
    event_times, deaths, _ = _event_counts(times, events)
    order = np.argsort(times, kind="stable")
    sorted_times = times[order]
    risk_sums = np.cumsum(risk[order][::-1])[::-1]
    denominators = risk_sums[np.searchsorted(sorted_times, event_times, side="left")]
    return CumulativeHazard(event_times, np.cumsum(deaths / denominators))

def cox_fit(
    data: SurvivalData,
    max_iterations: int = 100,
    tolerance: float = 1e-8,
    max_abs_beta: float = 50.0
) -> CoxFit:
    """Fit a Cox proportional-hazards model.

    Newton-Raphson with step-halving on the Breslow partial likelihood. The
    fit has converged when the log-likelihood changes by less than
    `tolerance` and the Newton step is smaller than 1 in every coordinate.

    Args:
        data: Cohort with at least one event and varying covariates
        max_iterations: Newton iteration limit
        tolerance: Log-likelihood change threshold
        max_abs_beta: Coefficient size taken as a monotone likelihood

    Returns:
        CoxFit; the Breslow baseline is attached when converged

    Raises:
        ValidationError: If there are no events or no covariates
        DegenerateCovariateError: If a covariate is constant
        SeparationError: If a coefficient exceeds max_abs_beta
    """
    times, events = _check_outcomes(data.times, data.events, "cox_fit")
    x = np.asarray(data.covariates, dtype=float)
    if not events.any():
        raise ValidationError("Cox regression needs at least one event", operation="cox_fit")
    if x.shape[1] == 0:
        raise ValidationError("Cox regression needs at least one covariate", operation="cox_fit")
    constant = [name for name, col in zip(data.feature_names, x.T) if np.ptp(col) == 0]
    if constant:
        context = ErrorContext(
            operation="cox_fit",
            error_code=ErrorCode.NUMERIC_DEGENERATE,
            details={"features": constant}
        )
        raise DegenerateCovariateError("Covariates without variation", context=context)

    plik = _PartialLikelihood(times, events, x)
    beta = np.zeros(x.shape[1])
    value, grad, info = plik.evaluate(beta)
    trace = [value]
    converged = False
    iteration = 0

    for iteration in range(1, max_iterations + 1):
        try:
            step = np.linalg.solve(info, grad)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(info, grad, rcond=None)[0]

        candidate = beta + step
        new_value = plik.evaluate(candidate, derivatives=False)
        halvings = 0
        while not new_value >= value - 1e-12 and halvings < 30:
            step = step / 2.0
            candidate = beta + step
            new_value = plik.evaluate(candidate, derivatives=False)
            halvings += 1
        if halvings:
            logger.debug("Iteration %d: step halved %d time(s)", iteration, halvings)
        if not new_value >= value - 1e-12:
            logger.warning("Step-halving failed to improve the partial likelihood at iteration %d", iteration)
            break

        beta = candidate
        change = new_value - value
        value, grad, info = plik.evaluate(beta)
        trace.append(value)
        logger.debug("Iteration %d: loglik=%.10f max|step|=%.3g", iteration, value, np.abs(step).max())

        if np.any(np.abs(beta) > max_abs_beta):
            context = ErrorContext(
                operation="cox_fit",
                error_code=ErrorCode.NUMERIC_SEPARATION,
                details={"iteration": iteration, "beta": np.round(beta, 3).tolist()}
            )
            raise SeparationError(
                "Partial likelihood is monotone; a coefficient diverges", context=context
            )
        if abs(change) < tolerance and np.abs(step).max() < 1.0:
            converged = True
            break

    if not converged:
        logger.warning("Cox fit did not converge after %d iteration(s)", iteration)
        return CoxFit(beta, trace, False, iteration, None, data.feature_names)

    baseline = _breslow(times, events, np.exp(x @ beta))
    logger.info("Cox fit converged in %d iteration(s), loglik=%.6f", iteration, value)
    return CoxFit(beta, trace, True, iteration, baseline, data.feature_names)

def _require_converged(fit: CoxFit, operation: str) -> None:
    if not fit.converged:
        raise StateError(
            "Cox fit has not converged",
            operation=operation,
            current_state="unconverged",
            expected_state="converged"
        )

def breslow_baseline(fit: CoxFit, data: SurvivalData) -> CumulativeHazard:
    """Breslow cumulative baseline hazard of a fitted model on a cohort.

    H0(t) = sum over event times t_k <= t of d_k / sum_{time_j >= t_k} exp(x_j beta)

    Raises:
        StateError: If the fit did not converge
    """
    _require_converged(fit, "breslow_baseline")
    times, events = _check_outcomes(data.times, data.events, "breslow_baseline")
    return _breslow(times, events, np.exp(np.asarray(data.covariates, dtype=float) @ fit.beta))

def cox_risk(fit: CoxFit, covariates: np.ndarray) -> np.ndarray:
    """Linear predictors x beta."""
    return np.atleast_2d(np.asarray(covariates, dtype=float)) @ fit.beta

def cox_predict(fit: CoxFit, covariates: np.ndarray, t: float) -> np.ndarray:
    """Survival probability at t, exp(-H0(t) * exp(x beta)), per row.

    Raises:
        StateError: If the fit did not converge
    """
    _require_converged(fit, "cox_predict")
    return np.exp(-fit.baseline(t) * np.exp(cox_risk(fit, covariates)))

def cox_survival_curves(fit: CoxFit, covariates: np.ndarray, grid: TimeGrid) -> SurvivalCurve:
    """Cox survival at each grid boundary, in the network's curve format.

    Raises:
        StateError: If the fit did not converge
    """
    _require_converged(fit, "cox_survival_curves")
    hazard = fit.baseline(grid.upper_array())
    cum = np.exp(-np.outer(np.exp(cox_risk(fit, covariates)), hazard))
    previous = np.hstack([np.ones((cum.shape[0], 1)), cum[:, :-1]])
    cond = np.divide(cum, previous, out=np.zeros_like(cum), where=previous > 0)
    return SurvivalCurve(cond, cum)

def loglog_table(
    data: SurvivalData, feature: str, times: Sequence[float], max_levels: int = 10
) -> pd.DataFrame:
    """Kaplan-Meier survival and log(-log S) per level of a covariate.

    Parallel log(-log S) columns across levels indicate proportional hazards.

    Args:
        data: Cohort
        feature: Covariate whose distinct values define the groups
        times: Times at which to evaluate
        max_levels: Largest number of distinct values accepted

    Returns:
        Long table with columns level, time, n, survival, log_neg_log

    Raises:
        ValidationError: If the feature is unknown or has too many levels
    """
    column = data.feature(feature)
    levels = np.unique(column)
    if levels.size > max_levels:
        raise ValidationError(
            f"Feature {feature!r} has too many distinct values for grouping",
            operation="loglog_table",
            details={"levels": int(levels.size), "max_levels": max_levels}
        )
    rows = []
    for level in levels:
        mask = column == level
        km = kaplan_meier(data.times[mask], data.events[mask])
        for t in times:
            s = km(float(t))
            with np.errstate(divide="ignore", invalid="ignore"):
                value = np.log(-np.log(s)) if 0.0 < s < 1.0 else np.nan
            rows.append({
                "level": float(level), "time": float(t), "n": int(mask.sum()),
                "survival": s, "log_neg_log": value
            })
    return pd.DataFrame(rows, columns=["level", "time", "n", "survival", "log_neg_log"])
