"""Compact representations for objects that carry numeric arrays.

Default dataclass representations print every array element, which makes
models and datasets unreadable in logs and tracebacks. The helpers here show
arrays as shape and dtype, truncate long sequences, and keep the familiar
``ClassName(field=value, ...)`` layout.

Path: survnet/utils/repr.py
"""
from enum import Enum
from typing import Any, Iterable, Optional

import numpy as np

def value_repr(value: Any, max_items: int = 6) -> str:
    """Short representation of a single attribute value.

    Args:
        value: Value to describe
        max_items: Maximum number of sequence items shown before truncation

    Returns:
        Representation string
    """
    if isinstance(value, np.ndarray):
        if value.size <= max_items and value.ndim <= 1:
            return np.array2string(value, precision=6, separator=", ")
        return f"array(shape={value.shape}, dtype={value.dtype})"
    if isinstance(value, Enum):
        return repr(value.value)
    if isinstance(value, (list, tuple)):
        shown = ", ".join(value_repr(v, max_items) for v in value[:max_items])
        if len(value) > max_items:
            shown += f", ... ({len(value)} items)"
        return f"[{shown}]" if isinstance(value, list) else f"({shown})"
    if isinstance(value, dict):
        keys = list(value)
        shown = ", ".join(
            f"{k!r}: {value_repr(value[k], max_items)}" for k in keys[:max_items]
        )
        if len(keys) > max_items:
            shown += f", ... ({len(keys)} keys)"
        return "{" + shown + "}"
    if isinstance(value, float):
        return f"{value:.6g}"
    return repr(value)

def compact_repr(
    obj: Any,
    fields: Optional[Iterable[str]] = None,
    exclude: Iterable[str] = (),
    max_items: int = 6
) -> str:
    """Generate ``ClassName(field=value, ...)`` with compact array handling.

    Args:
        obj: Object to represent
        fields: Attribute names to include; defaults to public instance attributes
        exclude: Attribute names to leave out
        max_items: Maximum number of sequence items shown per attribute

    Returns:
        Representation string
    """
    excluded = set(exclude)
    if fields is None:
        fields = [k for k in vars(obj) if not k.startswith("_")]
    parts = [
        f"{name}={value_repr(getattr(obj, name), max_items)}"
        for name in fields
        if name not in excluded
    ]
    return f"{obj.__class__.__name__}({', '.join(parts)})"
