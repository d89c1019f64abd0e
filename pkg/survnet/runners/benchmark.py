"""Training-time benchmark over resampled cohort sizes.

Sizes are round(10 ** k) for k = 3, 3.5, 4, ... up to the requested maximum.
Each size is trained `repetitions` times on bootstrap resamples of a source
cohort and the mean wall-clock seconds are reported per size. Timed runs
execute with allocation tracing off; the peak traced allocation comes from
one extra untimed run per size.

Path: survnet/runners/benchmark.py
"""
import logging
import math
import time
import tracemalloc
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from survnet.common.base import BaseRunner, RunnerResult
from survnet.common.errors import ValidationError
from survnet.config.train import GridSpec, NetworkSpec, TrainConfig
from survnet.io.tables import write_table
from survnet.nnet.trainer import train
from survnet.survival.data import SurvivalData
from survnet.survival.datagen import bootstrap_resample
from survnet.survival.timegrid import TimeGrid

logger = logging.getLogger(__name__)

def benchmark_sizes(max_size: int, min_exponent: float = 3.0, step: float = 0.5) -> List[int]:
    """Cohort sizes on a half-decade ladder from 10 ** min_exponent to max_size.

    Raises:
        ValidationError: If max_size is below the first size
    """
    if max_size < round(10 ** min_exponent):
        raise ValidationError("Maximum size is below the smallest benchmark size",
                              operation="benchmark",
                              details={"max_size": max_size, "smallest": round(10 ** min_exponent)})
    top = math.log10(max_size) + 1e-9
    exponents = np.arange(min_exponent, top + step / 2, step)
    return [int(round(10 ** k)) for k in exponents if k <= top]

class BenchmarkRunner(BaseRunner):
    """Time training across cohort sizes."""

    def __init__(
        self,
        source: SurvivalData,
        output: Path | str,
        max_size: int,
        grid: GridSpec,
        network: Optional[NetworkSpec] = None,
        config: Optional[TrainConfig] = None,
        repetitions: int = 3,
        seed: int = 0
    ):
        super().__init__()
        self.source = source
        self.output = Path(output)
        self.sizes = benchmark_sizes(max_size)
        self.grid_spec = grid
        self.network = network or NetworkSpec()
        self.config = config or TrainConfig()
        if repetitions < 1:
            raise ValidationError("At least one repetition is required",
                                  operation="benchmark", details={"repetitions": repetitions})
        self.repetitions = repetitions
        self.seed = seed
        self.table: Optional[pd.DataFrame] = None

    def _execute(self) -> None:
        grid = self.grid_spec.build()
        rows: List[Dict[str, Any]] = []
        for size in self.sizes:
            seconds = []
            for rep in range(self.repetitions):
                sample = bootstrap_resample(self.source, size, self.seed + 1000 * rep + size)
                start = time.perf_counter()
                train(sample, grid, self.network, self.config)
                seconds.append(time.perf_counter() - start)
            peak = self._peak_memory(bootstrap_resample(self.source, size, self.seed + size), grid)
            rows.append({
                "size": size,
                "repetitions": self.repetitions,
                "mean_seconds": float(np.mean(seconds)),
                "peak_memory_mb": peak / 2 ** 20,
            })
            logger.info("Size %d: %.3fs mean over %d run(s)", size, rows[-1]["mean_seconds"], self.repetitions)

        self.table = pd.DataFrame(rows, columns=["size", "repetitions", "mean_seconds", "peak_memory_mb"])
        self.summary["sizes"] = self.sizes
        if len(rows) > 1:
            log_size = np.log10(self.table["size"].to_numpy(dtype=float))
            self.summary["time_slope"] = float(np.polyfit(log_size, np.log10(self.table["mean_seconds"]), 1)[0])
            self.summary["memory_slope"] = float(np.polyfit(log_size, np.log10(self.table["peak_memory_mb"]), 1)[0])

    def _peak_memory(self, sample: SurvivalData, grid: TimeGrid) -> float:
        """Peak traced allocation in bytes for one untimed training run."""
        tracemalloc.start()
        try:
            train(sample, grid, self.network, self.config)
            return float(tracemalloc.get_traced_memory()[1])
        finally:
            tracemalloc.stop()

    def _write_outputs(self) -> List[Path]:
        return [write_table(self.table, self.output)]

def run_benchmark(source: SurvivalData, output: Path | str, max_size: int, grid: GridSpec,
                  **kwargs: Any) -> RunnerResult:
    """Convenience function: benchmark training on resamples of `source`."""
    return BenchmarkRunner(source, output, max_size, grid, **kwargs).run()
