"""Model persistence.

A model file is one JSON document holding the layer specifications, grid
boundaries, head kind, feature names and scaling, and every weight. Floats
are written with Python's shortest round-trip representation, so a loaded
model reproduces predictions bit for bit. The `schema_version` field guards
against reading files from an incompatible format.

Path: survnet/io/model_store.py
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np

from survnet.common.base import ensure_parent
from survnet.common.enums import HeadKind
from survnet.common.errors import (
    ConfigError, FileError, ModelFormatError, ModelVersionError, ValidationError,
    ErrorCode, ErrorContext
)
from survnet.config.train import LayerSpec
from survnet.nnet.network import ModelParams
from survnet.survival.timegrid import TimeGrid

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"
FORMAT_NAME = "survnet-model"

def _array_payload(value: Optional[np.ndarray]) -> Optional[Dict[str, Any]]:
    if value is None:
        return None
    value = np.asarray(value, dtype=float)
    return {"shape": list(value.shape), "values": [float(v) for v in value.reshape(-1)]}

def _array_from(payload: Optional[Dict[str, Any]]) -> Optional[np.ndarray]:
    if payload is None:
        return None
    return np.asarray(payload["values"], dtype=float).reshape(payload["shape"])

def model_document(params: ModelParams, metadata: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """JSON-ready description of a model."""
    return {
        "format": FORMAT_NAME,
        "schema_version": SCHEMA_VERSION,
        "head": params.head.value,
        "grid": {"uppers": list(params.grid.uppers)},
        "layers": [spec.model_dump(mode="json") for spec in params.layers],
        "features": {
            "names": list(params.feature_names),
            "means": _array_payload(params.feature_means),
            "scales": _array_payload(params.feature_scales),
        },
        "params": {name: _array_payload(value) for name, value in params.values.items()},
        "metadata": metadata or {},
    }

def save_model(params: ModelParams, path: Path | str, metadata: Optional[Dict[str, Any]] = None) -> Path:
    """Write a model file.

    Args:
        params: Model to store
        path: Destination
        metadata: Extra JSON-serializable information (training settings, ...)

    Returns:
        Path written

    Raises:
        FileError: If the file cannot be written
    """
    path = Path(path)
    document = model_document(params, metadata)
    try:
        ensure_parent(path)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(document, f, indent=1, allow_nan=False)
            f.write("\n")
    except OSError as e:
        context = ErrorContext(operation="save_model", error_code=ErrorCode.FILE_WRITE, path=path)
        raise FileError("Failed to write model file", path=path, context=context, original_error=e) from e
    logger.debug("Saved %s model with %d parameter arrays to %s",
                 params.head.value, len(params.values), path)
    return path

def load_model(path: Path | str) -> ModelParams:
    """Read a model file.

    Raises:
        FileError: If the file cannot be read
        ModelFormatError: If the file is not a complete, consistent model
        ModelVersionError: If the schema version is not supported
    """
    return read_model(path)[0]

def read_model(path: Path | str) -> Tuple[ModelParams, Dict[str, Any]]:
    """Read a model file together with its metadata block.

    Raises:
        FileError: If the file cannot be read
        ModelFormatError: If the file is not a complete, consistent model
        ModelVersionError: If the schema version is not supported
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = json.load(f)
    except FileNotFoundError as e:
        context = ErrorContext(operation="load_model", error_code=ErrorCode.FILE_NOT_FOUND, path=path)
        raise FileError("Model file not found", path=path, context=context, original_error=e) from e
    except json.JSONDecodeError as e:
        context = ErrorContext(
            operation="load_model",
            error_code=ErrorCode.MODEL_PARSE,
            path=path,
            details={"error_line": e.lineno, "error_col": e.colno, "error_msg": e.msg}
        )
        raise ModelFormatError("Model file is not valid JSON", context=context, original_error=e) from e
    except (OSError, UnicodeDecodeError) as e:
        context = ErrorContext(operation="load_model", error_code=ErrorCode.FILE_READ, path=path)
        raise FileError("Failed to read model file", path=path, context=context, original_error=e) from e

    params = model_from_document(document, path)
    metadata = document.get("metadata") or {}
    return params, metadata if isinstance(metadata, dict) else {}

def model_from_document(document: Any, path: Optional[Path] = None) -> ModelParams:
    """Rebuild a model from its JSON description."""
    if not isinstance(document, dict) or document.get("format") != FORMAT_NAME:
        raise ModelFormatError("Not a survnet model document", operation="load_model", path=path)
    version = document.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ModelVersionError(str(version), SCHEMA_VERSION, operation="load_model", path=path)

    try:
        layers = tuple(LayerSpec.from_dict(spec) for spec in document["layers"])
        grid = TimeGrid(tuple(document["grid"]["uppers"]))
        features = document["features"]
        params = ModelParams(
            layers=layers,
            grid=grid,
            values={name: _array_from(payload) for name, payload in document["params"].items()},
            feature_names=tuple(features["names"]),
            feature_means=_array_from(features["means"]),
            feature_scales=_array_from(features["scales"]),
        )
        head = HeadKind(document["head"])
    except ModelFormatError:
        raise
    except (ConfigError, ValidationError, KeyError, TypeError, ValueError) as e:
        context = ErrorContext(
            operation="load_model",
            error_code=ErrorCode.MODEL_PARSE,
            path=path,
            details={"error": str(e)}
        )
        raise ModelFormatError("Model file is incomplete or malformed", context=context,
                               original_error=e) from e

    if head != params.head:
        raise ModelFormatError(
            "Declared head does not match the layers",
            operation="load_model", path=path,
            details={"declared": head.value, "layers": params.head.value}
        )
    logger.debug("Loaded %s model from %s", head.value, path)
    return params
