"""Reading and writing datasets, models and result tables.

Path: survnet/io/__init__.py
"""

from .dataset import (
    IngestionReport,
    load_dataset,
    dataset_frame,
    write_dataset,
    split
)
from .model_store import (
    SCHEMA_VERSION,
    FORMAT_NAME,
    model_document,
    model_from_document,
    save_model,
    load_model,
    read_model
)
from .support import (
    prepare_support,
    support_schema,
    support_columns
)
from .tables import (
    boundary_label,
    write_table,
    curves_frame,
    loss_frame,
    time_label,
    metrics_frame
)

__all__ = [
    'IngestionReport',
    'load_dataset',
    'dataset_frame',
    'write_dataset',
    'split',
    'SCHEMA_VERSION',
    'FORMAT_NAME',
    'model_document',
    'model_from_document',
    'save_model',
    'load_model',
    'read_model',
    'prepare_support',
    'support_schema',
    'support_columns',
    'boundary_label',
    'write_table',
    'curves_frame',
    'loss_frame',
    'time_label',
    'metrics_frame'
]
