"""Training runner.

Loads a training file, builds the grid and architecture, optionally picks
the L2 strength by cross-validation, trains, and writes the model together
with its per-epoch loss trace.

Example:
    ```python
    from survnet.config.train import GridSpec, NetworkSpec, TrainConfig
    from survnet.runners import train_model

    result = train_model(
        "train.csv", "model.json",
        grid=GridSpec(scheme="halflife", horizon=2190, count=19),
        network=NetworkSpec(hidden_sizes=[7]),
        config=TrainConfig(epochs=1000),
        l2_candidates=[0.0, 1e-3, 1e-2],
    )
    print(result.summary["final_loss"])
    ```

Path: survnet/runners/training.py
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from survnet.common.base import BaseRunner, RunnerResult, optional_path
from survnet.config.schema import DatasetSchema
from survnet.config.train import GridSpec, NetworkSpec, TrainConfig
from survnet.io.dataset import load_dataset
from survnet.io.model_store import load_model, save_model
from survnet.io.tables import loss_frame, write_table
from survnet.nnet.trainer import L2Selection, TrainResult, select_l2, train

logger = logging.getLogger(__name__)

class TrainRunner(BaseRunner):
    """Fit a survival network to a dataset file.

    Attributes:
        result: Training outcome after execution
        selection: Cross-validation outcome when candidates were given
    """

    def __init__(
        self,
        input_path: Path | str,
        model_output: Path | str,
        grid: GridSpec,
        network: Optional[NetworkSpec] = None,
        config: Optional[TrainConfig] = None,
        *,
        schema: Optional[DatasetSchema] = None,
        l2_candidates: Optional[Sequence[float]] = None,
        folds: int = 10,
        loss_output: Optional[Path | str] = None,
        warm_start: Optional[Path | str] = None
    ):
        """Initialize the runner.

        Args:
            input_path: Training dataset file
            model_output: Where to write the model
            grid: Interval grid settings
            network: Architecture (defaults to the flexible head, no hidden layer)
            config: Optimizer settings
            schema: Dataset schema
            l2_candidates: Cross-validate over these L2 strengths
            folds: Number of cross-validation folds
            loss_output: Loss trace file (defaults next to the model)
            warm_start: Existing model file to continue training from
        """
        super().__init__()
        self.input_path = Path(input_path)
        self.model_output = Path(model_output)
        self.grid_spec = grid
        self.network = network or NetworkSpec()
        self.config = config or TrainConfig()
        self.schema = schema or DatasetSchema()
        self.l2_candidates = list(l2_candidates) if l2_candidates else None
        self.folds = folds
        self.loss_output = optional_path(loss_output) or self.model_output.with_suffix(".loss.csv")
        self.warm_start = optional_path(warm_start)
        self.result: Optional[TrainResult] = None
        self.selection: Optional[L2Selection] = None
        self._metadata: Dict[str, Any] = {}

    def _execute(self) -> None:
        data, report = load_dataset(self.input_path, self.schema)
        for name, fraction in report.dropped.items():
            self._add_warning(f"Dropped feature {name} ({100 * fraction:.1f}% missing)")
        initial = load_model(self.warm_start) if self.warm_start else None
        grid = initial.grid if initial is not None else self.grid_spec.build()
        logger.info("Grid of %d intervals ending at %.1f days", grid.n, grid.horizon)

        config = self.config
        if self.l2_candidates:
            self.selection = select_l2(data, grid, self.network, config,
                                       self.l2_candidates, self.folds)
            config = config.merged({"l2_strength": self.selection.l2_strength})

        layers = initial.layers if initial is not None else self.network
        self.result = train(data, grid, layers, config, initial_params=initial)

        self._metadata = {
            "train_config": config.model_dump(mode="json"),
            "network": self.network.model_dump(mode="json"),
            "fill_values": report.fill_values,
            "dropped_features": sorted(report.dropped),
            "training_subjects": data.n_subjects,
            "final_loss": self.result.losses[-1],
        }
        if self.selection is not None:
            self._metadata["l2_scores"] = {f"{k:g}": v for k, v in self.selection.scores.items()}

        self.summary.update({
            "subjects": data.n_subjects,
            "features": list(data.feature_names),
            "intervals": grid.n,
            "horizon": grid.horizon,
            "head": self.result.params.head.value,
            "l2_strength": config.l2_strength,
            "final_loss": self.result.losses[-1],
        })

    def _write_outputs(self) -> List[Path]:
        written = [
            save_model(self.result.params, self.model_output, self._metadata),
            write_table(loss_frame(self.result.losses), self.loss_output),
        ]
        if self.selection is not None:
            scores = pd.DataFrame({
                "l2_strength": list(self.selection.scores),
                "heldout_loglik": list(self.selection.scores.values()),
            })
            written.append(write_table(scores, self.model_output.with_suffix(".cv.csv")))
        return written

def train_model(
    input_path: Path | str,
    model_output: Path | str,
    grid: GridSpec,
    network: Optional[NetworkSpec] = None,
    config: Optional[TrainConfig] = None,
    **kwargs: Any
) -> RunnerResult:
    """Convenience function: train on a dataset file and write the model."""
    return TrainRunner(input_path, model_output, grid, network, config, **kwargs).run()
