"""Feed-forward survival networks, RMSprop and the training loop.

Example:
    ```python
    from survnet.config import NetworkSpec, TrainConfig
    from survnet.nnet import predict, survival_at, train
    from survnet.survival import make_halflife_grid_to_horizon

    grid = make_halflife_grid_to_horizon(1095, 19)
    result = train(data, grid, NetworkSpec(hidden_sizes=[7]), TrainConfig(epochs=500))
    curves = predict(result.params, new_covariates)
    one_year = survival_at(curves, grid, 365)
    ```

Path: survnet/nnet/__init__.py
"""

from .network import (
    MAX_LINEAR_PREDICTOR,
    ModelParams,
    sigmoid,
    log_sigmoid,
    logit,
    init_params,
    forward,
    l2_penalty,
    objective,
    loss_and_grad,
    backward,
    predict,
    survival_at,
    median_survival
)
from .optim import (
    RMSpropState,
    rmsprop_update,
    rmsprop_step
)
from .trainer import (
    TrainResult,
    L2Selection,
    fit_scaling,
    train,
    heldout_loglik,
    select_l2
)

__all__ = [
    'MAX_LINEAR_PREDICTOR',
    'ModelParams',
    'sigmoid',
    'log_sigmoid',
    'logit',
    'init_params',
    'forward',
    'l2_penalty',
    'objective',
    'loss_and_grad',
    'backward',
    'predict',
    'survival_at',
    'median_survival',
    'RMSpropState',
    'rmsprop_update',
    'rmsprop_step',
    'TrainResult',
    'L2Selection',
    'fit_scaling',
    'train',
    'heldout_loglik',
    'select_l2'
]
