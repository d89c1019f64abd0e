"""Small helpers: seeded generators and compact object representations.

Path: survnet/utils/__init__.py
"""

from .repr import (
    value_repr,
    compact_repr
)
from .rng import (
    make_rng,
    open_unit_uniform
)

__all__ = [
    'value_repr',
    'compact_repr',
    'make_rng',
    'open_unit_uniform'
]
