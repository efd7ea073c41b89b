"""Gaussian DAG parameters and prior hyperparameters"""
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .graph import Dag


class CholeskyParams(BaseModel):
    """
    Modified Cholesky parameterization of a DAG-Markov precision matrix.

    Omega = L diag(D)^-1 L^T, Sigma = L^-T diag(D) L^-1. ``L`` has unit
    diagonal and L[u, v] may be nonzero only for edges u -> v; the SEM
    coefficients of node j are -L[pa(j), j].
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    D: np.ndarray
    L: np.ndarray

    @field_validator("D", "L", mode="before")
    @classmethod
    def _as_float_array(cls, value):
        return np.array(value, dtype=float)

    @model_validator(mode="after")
    def _check_shapes(self):
        q = self.D.shape[0]
        if self.D.ndim != 1 or self.L.shape != (q, q):
            raise ValueError(f"D must have shape (q,) and L shape (q, q); got {self.D.shape}, {self.L.shape}")
        if not np.all(self.D > 0):
            raise ValueError("conditional variances D must be strictly positive")
        if not np.allclose(np.diag(self.L), 1.0):
            raise ValueError("L must have unit diagonal")
        return self

    @property
    def q(self) -> int:
        return self.D.shape[0]

    @classmethod
    def identity(cls, q: int) -> "CholeskyParams":
        return cls(D=np.ones(q), L=np.eye(q))

    @property
    def support(self) -> frozenset:
        """Off-diagonal positions (u, v) with L[u, v] != 0"""
        off_diag = self.L.copy()
        np.fill_diagonal(off_diag, 0.0)
        rows, cols = np.nonzero(off_diag)
        return frozenset((int(u), int(v)) for u, v in zip(rows, cols))

    def is_supported_on(self, dag: Dag) -> bool:
        return dag.q == self.q and self.support <= dag.edges


class DagWishartHyper(BaseModel):
    """
    DAG-Wishart hyperparameters: position matrix U (s.p.d.) and shape a > q - 1.

    Node shapes follow the compatibility rule a_j = a + |pa(j)| - q + 1.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    U: np.ndarray
    a: float

    @field_validator("U", mode="before")
    @classmethod
    def _as_float_array(cls, value):
        return np.array(value, dtype=float)

    @model_validator(mode="after")
    def _check_hyper(self):
        q = self.U.shape[0]
        if self.U.shape != (q, q):
            raise ValueError(f"U must be square, got shape {self.U.shape}")
        if not np.allclose(self.U, self.U.T):
            raise ValueError("U must be symmetric")
        if np.linalg.eigvalsh(self.U).min() <= 0:
            raise ValueError("U must be positive definite")
        if self.a <= q - 1:
            raise ValueError(f"shape a={self.a} must exceed q - 1 = {q - 1}")
        return self

    @property
    def q(self) -> int:
        return self.U.shape[0]

    @classmethod
    def default(cls, q: int, n: int, g: Optional[float] = None, a: Optional[float] = None) -> "DagWishartHyper":
        """U = g I_q with g = 1/n and a = q unless given"""
        if g is None:
            g = 1.0 / max(n, 1)
        if a is None:
            a = float(q)
        return cls(U=g * np.eye(q), a=a)

    def node_shape(self, n_parents: int) -> float:
        """a_j^D = a + |pa(j)| - q + 1"""
        return self.a + n_parents - self.q + 1


class GraphPriorHyper(BaseModel):
    """Beta(c, d) prior on the edge inclusion probability"""

    c: float = Field(default=1.0, gt=0)
    d: float = Field(default=5.0, gt=0)

    @property
    def expected_inclusion(self) -> float:
        """E(pi) = c / (c + d)"""
        return self.c / (self.c + self.d)
