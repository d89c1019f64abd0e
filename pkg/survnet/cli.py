"""Command-line interface.

Subcommands map one-to-one onto the runners in `survnet.runners`:

    survnet simulate --preset two-group --output sim.csv --seed 1
    survnet prepare-support support2.csv --output support.csv
    survnet split sim.csv --train-out train.csv --test-out test.csv --seed 1
    survnet train train.csv --model model.json --grid halflife --horizon 2190 --intervals 19
    survnet evaluate model.json test.csv --output metrics.csv --cox-train train.csv
    survnet predict model.json new.csv --output curves.csv
    survnet calibrate model.json test.csv --output calibration.csv --time 365
    survnet benchmark --preset two-group --max-size 10000 --output bench.csv
    survnet loglog sim.csv --feature group --output loglog.csv

Exit status is 0 on success, 2 for usage, file and configuration errors, 3 for
data, model and validation errors and 4 for numerical failures.

Path: survnet/cli.py
"""
import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from survnet import __version__
from survnet.common.base import RunnerResult
from survnet.common.enums import Activation, GridScheme, HeadKind
from survnet.common.errors import SurvnetError
from survnet.config.schema import DatasetSchema
from survnet.config.train import GridSpec, NetworkSpec, TrainConfig
from survnet.io.dataset import load_dataset
from survnet.runners._shared import read_schema
from survnet.runners.benchmark import BenchmarkRunner
from survnet.runners.data import (
    PRESETS, PrepareSupportRunner, SimulateRunner, SplitRunner, resolve_sim_spec
)
from survnet.runners.diagnostics import LoglogRunner
from survnet.runners.evaluation import (
    DEFAULT_EVAL_TIMES, DEFAULT_RANK_TIME, CalibrateRunner, EvaluateRunner, PredictRunner
)
from survnet.runners.training import TrainRunner
from survnet.survival.datagen import simulate

logger = logging.getLogger(__name__)

def _list_of(convert: Callable[[str], Any], what: str) -> Callable[[str], List[Any]]:
    """argparse type for comma-separated lists."""
    def parse(text: str) -> List[Any]:
        items = [item.strip() for item in text.split(",") if item.strip()]
        try:
            return [convert(item) for item in items]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a comma-separated list of {what}, got {text!r}")
    return parse

float_list = _list_of(float, "numbers")
int_list = _list_of(int, "integers")

def _add_schema_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--schema", help="Dataset schema JSON file")
    parser.add_argument("--time-column", help="Follow-up time column (overrides the schema)")
    parser.add_argument("--event-column", help="Event indicator column (overrides the schema)")

def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    """Grid, architecture and optimizer flags shared by train and benchmark."""
    grid = parser.add_argument_group("time grid")
    grid.add_argument("--grid", choices=[s.value for s in GridScheme], default=GridScheme.HALFLIFE.value,
                      help="Interval layout (default: halflife)")
    grid.add_argument("--intervals", type=int, help="Number of half-life intervals (default: 19)")
    grid.add_argument("--horizon", type=float, help="Last time of interest in days")
    grid.add_argument("--width", type=float, help="Interval width in days for uniform grids")
    grid.add_argument("--halflife", type=float, help="Half-life of interval width in days")
    grid.add_argument("--boundaries", type=float_list, help="Interval upper limits for explicit grids")

    network = parser.add_argument_group("network")
    network.add_argument("--head", choices=[h.value for h in HeadKind], default=HeadKind.FLEXIBLE.value,
                         help="Output head (default: flexible)")
    network.add_argument("--hidden", type=int_list, default=[], help="Hidden layer sizes, e.g. 7 or 16,8")
    network.add_argument("--activation", choices=[a.value for a in Activation],
                         default=Activation.RECTIFIER.value, help="Hidden activation")

    training = parser.add_argument_group("training")
    training.add_argument("--config", help="TrainConfig JSON file; flags override its values")
    training.add_argument("--epochs", type=int)
    training.add_argument("--batch-size", type=int)
    training.add_argument("--learning-rate", type=float)
    training.add_argument("--l2", type=float, dest="l2_strength", help="L2 penalty on kernel weights")
    training.add_argument("--seed", type=int, dest="rng_seed", help="Seed for initialization and shuffling")

def build_parser() -> argparse.ArgumentParser:
    """Construct the argument parser for all subcommands."""
    parser = argparse.ArgumentParser(
        prog="survnet",
        description="Discrete-time neural survival models"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="Logging verbosity (default: WARNING)")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("simulate", help="Generate a synthetic cohort")
    source = p.add_mutually_exclusive_group()
    source.add_argument("--preset", choices=sorted(PRESETS), help="Built-in design (default: two-group)")
    source.add_argument("--spec", help="Simulation design JSON file")
    p.add_argument("--subjects", type=int, help="Number of subjects")
    p.add_argument("--seed", type=int, help="Seed of the uniform stream")
    p.add_argument("--output", "-o", required=True, help="Output dataset file")

    p = commands.add_parser("prepare-support", help="Convert the public SUPPORT file (support2.csv)")
    p.add_argument("input", help="Downloaded support2.csv")
    p.add_argument("--output", "-o", required=True, help="Prepared dataset file")
    p.add_argument("--schema-out", help="Schema file (default: <output stem>.schema.json)")

    p = commands.add_parser("split", help="Split a dataset into training and test files")
    p.add_argument("input", help="Dataset file")
    p.add_argument("--train-out", required=True)
    p.add_argument("--test-out", required=True)
    p.add_argument("--fraction", type=float, default=0.7, help="Training fraction (default: 0.7)")
    p.add_argument("--seed", type=int, default=0)
    _add_schema_flags(p)

    p = commands.add_parser("train", help="Train a survival network")
    p.add_argument("input", help="Training dataset file")
    p.add_argument("--model", "-o", required=True, help="Model output file")
    _add_model_flags(p)
    p.add_argument("--l2-candidates", type=float_list, help="Cross-validate over these L2 strengths")
    p.add_argument("--folds", type=int, default=10, help="Cross-validation folds (default: 10)")
    p.add_argument("--loss-output", help="Loss trace file (default: <model>.loss.csv)")
    p.add_argument("--warm-start", help="Continue training from this model file")
    _add_schema_flags(p)

    p = commands.add_parser("evaluate", help="C-index, Brier scores and calibration of a model")
    p.add_argument("model", help="Model file")
    p.add_argument("data", help="Labelled dataset file")
    p.add_argument("--output", "-o", required=True, help="Metrics output file")
    p.add_argument("--times", type=float_list, default=list(DEFAULT_EVAL_TIMES),
                   help="Brier and calibration times in days (default: 182,365,1095)")
    p.add_argument("--rank-time", type=float, default=DEFAULT_RANK_TIME,
                   help="Rank subjects by predicted failure before this day (default: 365)")
    p.add_argument("--calibration-output", help="Calibration table file (default: <output>.calibration.csv)")
    p.add_argument("--groups", type=int, default=10, help="Calibration groups (default: 10)")
    p.add_argument("--cox-train", help="Fit a Cox comparator on this training file")
    p.add_argument("--threads", type=int, default=1, help="Threads for C-index pair counting")
    p.add_argument("--time-column", default="time")
    p.add_argument("--event-column", default="event")

    p = commands.add_parser("predict", help="Predicted survival curves per subject")
    p.add_argument("model", help="Model file")
    p.add_argument("data", help="Covariate file")
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--times", type=float_list, help="Report these times instead of the interval boundaries")

    p = commands.add_parser("calibrate", help="Decile calibration table at one time")
    p.add_argument("model", help="Model file")
    p.add_argument("data", help="Labelled dataset file")
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--time", type=float, default=DEFAULT_RANK_TIME, help="Days (default: 365)")
    p.add_argument("--groups", type=int, default=10)
    p.add_argument("--time-column", default="time")
    p.add_argument("--event-column", default="event")

    p = commands.add_parser("benchmark", help="Training time across resampled cohort sizes")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help="Source dataset file to resample")
    source.add_argument("--preset", choices=sorted(PRESETS), help="Simulate the source cohort")
    p.add_argument("--max-size", type=int, required=True, help="Largest cohort size")
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--output", "-o", required=True)
    _add_model_flags(p)
    _add_schema_flags(p)

    p = commands.add_parser("loglog", help="Kaplan-Meier log(-log S) table per covariate level")
    p.add_argument("input", help="Dataset file")
    p.add_argument("--feature", required=True, help="Covariate to stratify by")
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--times", type=float_list, help="Times in days (default: evenly spaced)")
    p.add_argument("--points", type=int, default=20, help="Number of default times")
    _add_schema_flags(p)

    return parser

def _schema(args: argparse.Namespace) -> DatasetSchema:
    return read_schema(args.schema, time_column=args.time_column, event_column=args.event_column)

def _grid_spec(args: argparse.Namespace) -> GridSpec:
    return GridSpec.from_dict({
        key: value for key, value in {
            "scheme": args.grid,
            "width": args.width,
            "horizon": args.horizon,
            "halflife": args.halflife,
            "count": args.intervals,
            "boundaries": args.boundaries,
        }.items() if value is not None
    })

def _network_spec(args: argparse.Namespace) -> NetworkSpec:
    return NetworkSpec.from_dict({
        "hidden_sizes": args.hidden,
        "head": args.head,
        "activation": args.activation,
    })

def _train_config(args: argparse.Namespace) -> TrainConfig:
    config = TrainConfig.from_file(args.config) if args.config else TrainConfig()
    return config.merged({
        "epochs": args.epochs,
        "batch_size": args.batch_size,
        "learning_rate": args.learning_rate,
        "l2_strength": args.l2_strength,
        "rng_seed": args.rng_seed,
    })

def _run_simulate(args: argparse.Namespace) -> RunnerResult:
    preset = None if args.spec else (args.preset or "two-group")
    spec = resolve_sim_spec(preset, args.spec, args.subjects, args.seed)
    return SimulateRunner(spec, args.output).run()

def _run_prepare_support(args: argparse.Namespace) -> RunnerResult:
    return PrepareSupportRunner(args.input, args.output, args.schema_out).run()

def _run_split(args: argparse.Namespace) -> RunnerResult:
    return SplitRunner(args.input, args.train_out, args.test_out,
                       args.fraction, args.seed, _schema(args)).run()

def _run_train(args: argparse.Namespace) -> RunnerResult:
    return TrainRunner(
        args.input, args.model, _grid_spec(args), _network_spec(args), _train_config(args),
        schema=_schema(args),
        l2_candidates=args.l2_candidates,
        folds=args.folds,
        loss_output=args.loss_output,
        warm_start=args.warm_start
    ).run()

def _run_evaluate(args: argparse.Namespace) -> RunnerResult:
    return EvaluateRunner(
        args.model, args.data, args.output,
        times=args.times,
        rank_time=args.rank_time,
        calibration_output=args.calibration_output,
        groups=args.groups,
        cox_train=args.cox_train,
        threads=args.threads,
        time_column=args.time_column,
        event_column=args.event_column
    ).run()

def _run_predict(args: argparse.Namespace) -> RunnerResult:
    return PredictRunner(args.model, args.data, args.output, args.times).run()

def _run_calibrate(args: argparse.Namespace) -> RunnerResult:
    return CalibrateRunner(
        args.model, args.data, args.output, args.time, args.groups,
        time_column=args.time_column, event_column=args.event_column
    ).run()

def _run_benchmark(args: argparse.Namespace) -> RunnerResult:
    config = _train_config(args)
    if args.input:
        source, _ = load_dataset(args.input, _schema(args))
    else:
        source = simulate(PRESETS[args.preset](rng_seed=config.rng_seed))
    return BenchmarkRunner(
        source, args.output, args.max_size, _grid_spec(args), _network_spec(args), config,
        repetitions=args.repetitions, seed=config.rng_seed
    ).run()

def _run_loglog(args: argparse.Namespace) -> RunnerResult:
    return LoglogRunner(args.input, args.feature, args.output,
                        args.times, args.points, _schema(args)).run()

COMMANDS: Dict[str, Callable[[argparse.Namespace], RunnerResult]] = {
    "simulate": _run_simulate,
    "prepare-support": _run_prepare_support,
    "split": _run_split,
    "train": _run_train,
    "evaluate": _run_evaluate,
    "predict": _run_predict,
    "calibrate": _run_calibrate,
    "benchmark": _run_benchmark,
    "loglog": _run_loglog,
}

def report(result: RunnerResult) -> None:
    """Print a run's summary to stdout and its problems to stderr."""
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if not result.success:
        for error in result.errors:
            print(f"error: {error}", file=sys.stderr)
        return
    for key, value in result.summary.items():
        if isinstance(value, float):
            value = f"{value:.6g}"
        print(f"{key}: {value}")
    for path in result.outputs:
        print(f"wrote {path}")

def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the `survnet` command.

    Returns:
        Process exit status
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )

    try:
        result = COMMANDS[args.command](args)
    except SurvnetError as e:
        # raised while assembling the run, before a runner exists
        logger.error("%s failed: %s", args.command, e)
        result = RunnerResult(success=False, message=str(e), errors=[str(e)], exit_code=e.exit_code)

    report(result)
    return result.exit_code

if __name__ == "__main__":
    sys.exit(main())
