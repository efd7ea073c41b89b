"""
Ingestion of a data CSV plus a two-column types file (``column,type``).

Rows in error messages are 1-based data rows (the header excluded).
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from errors import DataValidationError
from models import ObservedData, VariableType

logger = logging.getLogger(__name__)

MISSING_TOKENS = {"", "na", "nan", "null", "none", "?"}


def read_types(path) -> Dict[str, VariableType]:
    path = Path(path)
    if not path.exists():
        raise DataValidationError(f"types file {path} not found")
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    if list(frame.columns[:2]) != ["column", "type"]:
        raise DataValidationError(f"types file {path} must have the header 'column,type'")
    types: Dict[str, VariableType] = {}
    for i, (column, raw_type) in enumerate(zip(frame["column"], frame["type"]), start=1):
        column = column.strip()
        try:
            types[column] = VariableType(raw_type.strip().lower())
        except ValueError:
            allowed = ", ".join(t.value for t in VariableType)
            raise DataValidationError(f"unknown type '{raw_type}' (expected one of {allowed})", row=i, column=column) from None
        if list(frame["column"]).count(column) > 1:
            raise DataValidationError("column declared twice in types file", row=i, column=column)
    return types


def _convert_column(raw: pd.Series, column: str, var_type: VariableType) -> np.ndarray:
    values = np.empty(len(raw))
    for i, cell in enumerate(raw, start=1):
        # short rows come back as NaN
        text = cell.strip() if isinstance(cell, str) else ""
        if text.lower() in MISSING_TOKENS:
            raise DataValidationError("missing value", row=i, column=column)
        try:
            value = float(text)
        except ValueError:
            raise DataValidationError(f"non-numeric value '{text}' for a {var_type.value} column", row=i, column=column) from None
        if not np.isfinite(value):
            raise DataValidationError(f"non-finite value '{text}'", row=i, column=column)
        if var_type == VariableType.COUNT and (value < 0 or value != int(value)):
            raise DataValidationError(f"count value '{text}' is not a non-negative integer", row=i, column=column)
        values[i - 1] = value

    levels = np.unique(values)
    if levels.size < 2:
        raise DataValidationError("constant column", column=column)
    if var_type == VariableType.BINARY and levels.size > 2:
        raise DataValidationError(f"binary column has {levels.size} distinct values", column=column)
    return values


def ingest(csv_path, types_path, columns: Optional[Sequence[str]] = None) -> ObservedData:
    """
    Load and validate mixed-type data. ``columns`` selects and orders a
    subset of the CSV columns; by default every column is used in file order.
    """
    csv_path = Path(csv_path)
    if not csv_path.exists():
        raise DataValidationError(f"data file {csv_path} not found")
    try:
        frame = pd.read_csv(csv_path, dtype=str, keep_default_na=False)
    except pd.errors.ParserError as exc:
        raise DataValidationError(f"data file is not rectangular: {exc}") from exc
    if frame.empty:
        raise DataValidationError("data file has no rows")
    if len(set(frame.columns)) != len(frame.columns):
        raise DataValidationError("duplicate column names in header")

    types = read_types(types_path)
    labels: List[str] = list(columns) if columns else list(frame.columns)
    for label in labels:
        if label not in frame.columns:
            raise DataValidationError("column not present in the data file", column=label)
        if label not in types:
            raise DataValidationError("column has no declared type", column=label)
    unknown = [name for name in types if name not in frame.columns]
    if unknown:
        raise DataValidationError(f"types declared for unknown columns {unknown}")

    X = np.column_stack([_convert_column(frame[label], label, types[label]) for label in labels])
    logger.info("ingested %s: n=%d, q=%d", csv_path, X.shape[0], X.shape[1])
    return ObservedData(X=X, var_types=[types[label] for label in labels], labels=labels)
