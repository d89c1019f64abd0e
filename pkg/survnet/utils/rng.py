"""Seeded random streams.

All randomness in survnet (weight initialization, shuffling, fold
assignment, simulation, resampling) is drawn from numpy's Philox generator, a
64-bit counter-based bit generator. Given the same seed it produces the same
uniform stream on every platform, so simulated datasets and training runs are
reproducible bit for bit.

Path: survnet/utils/rng.py
"""
import numpy as np

def make_rng(seed: int) -> np.random.Generator:
    """Generator over the Philox counter-based stream for `seed`."""
    return np.random.Generator(np.random.Philox(int(seed)))

def open_unit_uniform(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform draws on (0, 1], safe to pass to a logarithm."""
    return 1.0 - rng.random(size)
