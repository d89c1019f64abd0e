"""Survival-analysis core: data, time grids, likelihood, baselines and metrics.

Path: survnet/survival/__init__.py
"""

from .data import (
    SurvivalRecord,
    SurvivalData
)
from .timegrid import (
    BEYOND_GRID,
    TimeGrid,
    EncodedTarget,
    make_uniform_grid,
    make_halflife_grid,
    make_halflife_grid_to_horizon,
    interval_index,
    interval_indices,
    encode,
    encode_batch
)
from .likelihood import (
    EPSILON,
    SurvivalCurve,
    clamp,
    survival_curve,
    loglik,
    batch_loss,
    loss_grad,
    brown_loss,
    risk_table,
    null_hazards,
    interval_loglik
)
from .baselines import (
    StepSurvival,
    CumulativeHazard,
    CoxFit,
    kaplan_meier,
    nelson_aalen,
    cox_fit,
    breslow_baseline,
    cox_risk,
    cox_predict,
    cox_survival_curves,
    loglog_table
)
from .metrics import (
    CalibrationRow,
    CalibrationTable,
    c_index,
    brier_censored,
    calibration_table
)
from .datagen import (
    simulate,
    bootstrap_resample
)

__all__ = [
    # Data
    'SurvivalRecord',
    'SurvivalData',

    # Time grid
    'BEYOND_GRID',
    'TimeGrid',
    'EncodedTarget',
    'make_uniform_grid',
    'make_halflife_grid',
    'make_halflife_grid_to_horizon',
    'interval_index',
    'interval_indices',
    'encode',
    'encode_batch',

    # Likelihood
    'EPSILON',
    'SurvivalCurve',
    'clamp',
    'survival_curve',
    'loglik',
    'batch_loss',
    'loss_grad',
    'brown_loss',
    'risk_table',
    'null_hazards',
    'interval_loglik',

    # Baselines
    'StepSurvival',
    'CumulativeHazard',
    'CoxFit',
    'kaplan_meier',
    'nelson_aalen',
    'cox_fit',
    'breslow_baseline',
    'cox_risk',
    'cox_predict',
    'cox_survival_curves',
    'loglog_table',

    # Metrics
    'CalibrationRow',
    'CalibrationTable',
    'c_index',
    'brier_censored',
    'calibration_table',

    # Simulation
    'simulate',
    'bootstrap_resample'
]
