"""Data ingestion and simulated-replicate files"""
from .loader import ingest, read_types
from .writer import (
    CONSTRAINTS_FILE,
    DATA_FILE,
    METADATA_FILE,
    TRUE_DAG_FILE,
    TYPES_FILE,
    write_data,
    write_replicate,
    write_types,
)

__all__ = [
    "ingest",
    "read_types",
    "CONSTRAINTS_FILE",
    "DATA_FILE",
    "METADATA_FILE",
    "TRUE_DAG_FILE",
    "TYPES_FILE",
    "write_data",
    "write_replicate",
    "write_types",
]
