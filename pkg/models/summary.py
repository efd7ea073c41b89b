"""Posterior summaries, MPM estimates and evaluation metrics"""
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .graph import Cpdag, Dag, Edge


class PosteriorSummary(BaseModel):
    """Edge probabilities, DAG visit frequencies and BMA covariance / correlation"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    edge_prob: np.ndarray
    dag_freq: Dict[str, float]
    sigma_bma: np.ndarray
    corr_bma: np.ndarray
    n_samples: int = Field(ge=0)  # S_eff
    labels: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_probabilities(self):
        p = self.edge_prob
        if p.size and (p.min() < 0 or p.max() > 1):
            raise ValueError("edge probabilities must lie in [0, 1]")
        if p.size and np.any(np.diag(p) != 0):
            raise ValueError("edge probability diagonal must be zero")
        if p.size and np.any(p + p.T > 1 + 1e-9):
            raise ValueError("the two orientations of a pair cannot exceed probability one")
        return self


class MpmEstimate(BaseModel):
    """
    Thresholded graph estimate.

    ``raw_edges`` are all directed pairs with probability >= k. When they
    contain a cycle or a pair in both orientations, ``conflicts`` lists
    the dropped edges and ``dag`` is the repaired acyclic subgraph.
    """
    q: int
    threshold: float
    raw_edges: Tuple[Edge, ...]
    is_dag: bool
    conflicts: Tuple[Edge, ...] = ()
    dag: Dag
    cpdag: Cpdag


class AgreementReport(BaseModel):
    """Differences between the summaries of two chains"""
    max_edge_prob_diff: float
    mean_edge_prob_diff: float
    max_corr_diff: float
    mean_corr_diff: float


class Metrics(BaseModel):
    """Confusion counts and recovery rates of an estimated graph against the truth"""
    tp: int
    tn: int
    fp: int
    fn: int
    sen: float
    spe: float
    shd: int
    shd_ratio: float
    mode: str = "skeleton"

    @model_validator(mode="after")
    def _check_rates(self):
        for name in ("sen", "spe"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} outside [0, 1]")
        return self
