"""Runners producing datasets: simulation, SUPPORT preparation and splitting.

Example:
    ```python
    from survnet.runners import simulate_dataset, split_dataset

    simulate_dataset("sim.csv", preset="two-group", n_subjects=5000, seed=1)
    split_dataset("sim.csv", "train.csv", "test.csv", train_fraction=0.7, seed=1)
    ```

Path: survnet/runners/data.py
"""
import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional

from survnet.common.base import BaseRunner, RunnerResult, ensure_parent
from survnet.common.errors import SurvnetError, ValidationError
from survnet.config.schema import DatasetSchema
from survnet.config.simulation import SimSpec
from survnet.io.dataset import load_dataset, split, write_dataset
from survnet.io.support import prepare_support, support_schema
from survnet.survival.data import SurvivalData
from survnet.survival.datagen import simulate

logger = logging.getLogger(__name__)

PRESETS: Dict[str, Callable[..., SimSpec]] = {
    "two-group": SimSpec.two_group_exponential,
    "interval-width": SimSpec.interval_width_study,
}

def resolve_sim_spec(
    preset: Optional[str] = None,
    config_path: Optional[Path | str] = None,
    n_subjects: Optional[int] = None,
    seed: Optional[int] = None
) -> SimSpec:
    """Simulation design from a preset name or a JSON file, with overrides.

    Raises:
        ValidationError: If both or neither source is given, or the preset is unknown
        ConfigError: If the file is invalid
    """
    if (preset is None) == (config_path is None):
        raise ValidationError("Give exactly one of a preset or a simulation file",
                              operation="simulate")
    if config_path is not None:
        spec = SimSpec.from_file(config_path)
    elif preset in PRESETS:
        spec = PRESETS[preset]()
    else:
        raise ValidationError(f"Unknown simulation preset {preset!r}",
                              operation="simulate", details={"presets": sorted(PRESETS)})
    return spec.merged({"n_subjects": n_subjects, "rng_seed": seed})

class SimulateRunner(BaseRunner):
    """Generate a synthetic cohort and write it as a delimited file."""

    def __init__(self, spec: SimSpec, output: Path | str):
        super().__init__()
        self.spec = spec
        self.output = Path(output)
        self.data: Optional[SurvivalData] = None

    def _execute(self) -> None:
        self.data = simulate(self.spec)
        self.summary.update({
            "subjects": self.data.n_subjects,
            "events": int(self.data.events.sum()),
            "seed": self.spec.rng_seed,
        })

    def _write_outputs(self) -> List[Path]:
        return [write_dataset(self.data, self.output)]

class SplitRunner(BaseRunner):
    """Split a dataset file into training and test files.

    The outputs use the standard `time` / `event` column names and hold the
    covariates after imputation.
    """

    def __init__(
        self,
        input_path: Path | str,
        train_output: Path | str,
        test_output: Path | str,
        train_fraction: float = 0.7,
        seed: int = 0,
        schema: Optional[DatasetSchema] = None
    ):
        super().__init__()
        self.input_path = Path(input_path)
        self.train_output = Path(train_output)
        self.test_output = Path(test_output)
        self.train_fraction = train_fraction
        self.seed = seed
        self.schema = schema or DatasetSchema()
        self.parts: Optional[tuple] = None

    def _execute(self) -> None:
        data, report = load_dataset(self.input_path, self.schema)
        for name in report.dropped:
            self._add_warning(f"Dropped feature {name} ({100 * report.dropped[name]:.1f}% missing)")
        self.parts = split(data, self.train_fraction, self.seed)
        self.summary.update({
            "train_subjects": self.parts[0].n_subjects,
            "test_subjects": self.parts[1].n_subjects,
            "features": list(data.feature_names),
        })

    def _write_outputs(self) -> List[Path]:
        return [
            write_dataset(self.parts[0], self.train_output),
            write_dataset(self.parts[1], self.test_output),
        ]

def simulate_dataset(
    output: Path | str,
    preset: Optional[str] = "two-group",
    config_path: Optional[Path | str] = None,
    n_subjects: Optional[int] = None,
    seed: Optional[int] = None
) -> RunnerResult:
    """Convenience function: simulate a cohort into `output`."""
    try:
        spec = resolve_sim_spec(None if config_path else preset, config_path, n_subjects, seed)
    except SurvnetError as e:
        return RunnerResult(success=False, message=str(e), errors=[str(e)], exit_code=e.exit_code)
    return SimulateRunner(spec, output).run()

def split_dataset(
    input_path: Path | str,
    train_output: Path | str,
    test_output: Path | str,
    train_fraction: float = 0.7,
    seed: int = 0,
    schema: Optional[DatasetSchema] = None
) -> RunnerResult:
    """Convenience function: split a dataset file into train and test files."""
    return SplitRunner(input_path, train_output, test_output, train_fraction, seed, schema).run()

class PrepareSupportRunner(BaseRunner):
    """Convert the public SUPPORT file and write its schema next to it.

    The schema lands at `<output stem>.schema.json` unless given, ready for
    `--schema` on the other commands.
    """

    def __init__(self, raw_path: Path | str, output: Path | str, schema_output: Optional[Path | str] = None):
        super().__init__()
        self.raw_path = Path(raw_path)
        self.output = Path(output)
        self.schema_output = (
            Path(schema_output) if schema_output is not None
            else self.output.with_name(self.output.stem + ".schema.json")
        )
        self.schema: Optional[DatasetSchema] = None

    def _execute(self) -> None:
        self.schema = support_schema()
        self.summary["covariates"] = len(self.schema.features or [])

    def _write_outputs(self) -> List[Path]:
        written = [prepare_support(self.raw_path, self.output)]
        ensure_parent(self.schema_output).write_text(
            self.schema.model_dump_json(indent=4, exclude_none=True) + "\n", encoding="utf-8"
        )
        written.append(self.schema_output)
        return written

def prepare_support_dataset(
    raw_path: Path | str, output: Path | str, schema_output: Optional[Path | str] = None
) -> RunnerResult:
    """Convenience function: prepare `support2.csv` for training."""
    return PrepareSupportRunner(raw_path, output, schema_output).run()
