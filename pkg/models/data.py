"""Observed mixed-type data and latent Gaussian data"""
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class VariableType(str, Enum):
    """Per-column measurement type"""
    BINARY = "binary"
    ORDINAL = "ordinal"
    COUNT = "count"
    CONTINUOUS = "continuous"


# n x q latent Gaussian matrix Z; valid iff it lies in the rank set A(X)
# (x[i, j] < x[l, j] implies z[i, j] < z[l, j]), see copula.in_rank_set
LatentMatrix = np.ndarray


class ObservedData(BaseModel):
    """
    n x q observed matrix with per-column types and labels.

    Marginals are never estimated: only the column ranks are used, so
    the validator only insists on complete, non-constant columns.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    X: np.ndarray
    var_types: List[VariableType]
    labels: List[str] = Field(default_factory=list)
    marginal_params: List[Dict[str, Any]] = Field(default_factory=list)

    @field_validator("X", mode="before")
    @classmethod
    def _as_float_matrix(cls, value):
        return np.array(value, dtype=float)

    @model_validator(mode="after")
    def _check_data(self):
        if self.X.ndim != 2:
            raise ValueError(f"X must be a matrix, got {self.X.ndim} dimensions")
        n, q = self.X.shape
        if q == 0:
            raise ValueError("X has no columns")
        if len(self.var_types) != q:
            raise ValueError(f"{len(self.var_types)} variable types for {q} columns")
        if not self.labels:
            self.labels = [f"X{j + 1}" for j in range(q)]
        if len(self.labels) != q:
            raise ValueError(f"{len(self.labels)} labels for {q} columns")
        if len(set(self.labels)) != q:
            raise ValueError("column labels must be unique")
        missing = np.argwhere(~np.isfinite(self.X))
        if missing.size:
            i, j = missing[0]
            raise ValueError(f"missing or non-finite value at row {i}, column '{self.labels[j]}'")
        for j in range(q):
            if n > 0 and np.unique(self.X[:, j]).size < 2:
                raise ValueError(f"constant column '{self.labels[j]}'")
        return self

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def q(self) -> int:
        return self.X.shape[1]

    def label_index(self) -> Dict[str, int]:
        return {label: j for j, label in enumerate(self.labels)}
