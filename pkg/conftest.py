"""Configuration file for pytest.

Puts the repository root on the import path so tests run without installing
the package, and provides the shared fixtures.
"""

import os
import sys
import tempfile
from pathlib import Path

import pytest

sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

from survnet.config.simulation import SimSpec  # noqa: E402
from survnet.survival.datagen import simulate  # noqa: E402

@pytest.fixture
def temp_dir():
    """Temporary directory removed after the test."""
    with tempfile.TemporaryDirectory() as tmp:
        yield Path(tmp)

@pytest.fixture(scope="session")
def two_group_data():
    """Seeded two-group exponential cohort of 2000 subjects."""
    return simulate(SimSpec.two_group_exponential(n_subjects=2000, rng_seed=11))
