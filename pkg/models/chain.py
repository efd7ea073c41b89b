"""MCMC configuration, chain state and chain records"""
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .graph import Dag, Edge, EdgeConstraints
from .params import CholeskyParams, DagWishartHyper, GraphPriorHyper


class McmcConfig(BaseModel):
    """Settings of one chain: length, burn-in, thinning, seed, priors and constraints"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    iterations: int = Field(ge=0)
    burnin: int = Field(default=0, ge=0)
    thin: int = Field(default=1, ge=1)
    seed: int = 0
    moves_per_sweep: int = Field(default=1, ge=1)
    init: Literal["empty", "random"] = "empty"
    init_edge_prob: float = Field(default=0.1, ge=0.0, le=1.0)
    latent_update: Literal["blocked", "serial"] = "blocked"
    update_latent: bool = True
    resample_after_accept: bool = True
    wishart: DagWishartHyper
    graph_prior: GraphPriorHyper = Field(default_factory=GraphPriorHyper)
    constraints: EdgeConstraints

    @model_validator(mode="after")
    def _check_consistency(self):
        if self.burnin > self.iterations:
            raise ValueError(f"burnin={self.burnin} exceeds iterations={self.iterations}")
        if self.constraints.q != self.wishart.q:
            raise ValueError(
                f"constraints cover {self.constraints.q} nodes but U is {self.wishart.q} x {self.wishart.q}"
            )
        return self

    @property
    def q(self) -> int:
        return self.wishart.q

    def is_recorded(self, iteration: int) -> bool:
        """Iterations are 1-based; keep post-burn-in iterations on the thinning grid"""
        return iteration > self.burnin and (iteration - self.burnin) % self.thin == 0


class ChainState(BaseModel):
    """
    Joint state of the chain: DAG, parameters, latent data and the
    sufficient statistic U + Z^T Z shared by every node evaluation.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    dag: Dag
    params: CholeskyParams
    Z: np.ndarray
    u_tilde: np.ndarray
    iteration: int = 0
    accepted: bool = False
    rng_state: Dict[str, Any] = Field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.Z.shape[0]


class ChainSample(BaseModel):
    """One thinned post-burn-in draw as written to a record sink"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    iteration: int
    edges: Tuple[Edge, ...]
    accepted: bool
    sigma: np.ndarray


class ChainRecord(BaseModel):
    """All samples of one chain, in iteration order"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    q: int = Field(gt=0)
    labels: List[str] = Field(default_factory=list)
    iterations: List[int] = Field(default_factory=list)
    edges: List[Tuple[Edge, ...]] = Field(default_factory=list)
    accepted: List[bool] = Field(default_factory=list)
    sigmas: List[np.ndarray] = Field(default_factory=list)

    def append(self, sample: ChainSample):
        self.iterations.append(sample.iteration)
        self.edges.append(tuple(sample.edges))
        self.accepted.append(bool(sample.accepted))
        self.sigmas.append(np.asarray(sample.sigma, dtype=float))

    def __len__(self) -> int:
        return len(self.iterations)

    @property
    def sigma_stack(self) -> np.ndarray:
        """Samples x q x q array of the recorded covariance matrices"""
        if not self.sigmas:
            return np.zeros((0, self.q, self.q))
        return np.stack(self.sigmas)

    def dags(self) -> List[Dag]:
        return [Dag(q=self.q, edges=frozenset(e)) for e in self.edges]

    @property
    def acceptance_rate(self) -> Optional[float]:
        if not self.accepted:
            return None
        return float(np.mean(self.accepted))
