"""Simulation scenario models"""
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .data import ObservedData
from .graph import Dag, EdgeConstraints
from .params import CholeskyParams
from .summary import Metrics


class DagClass(str, Enum):
    FREE = "free"
    REGRESSION = "regression"
    BLOCK = "block"


class VarClass(str, Enum):
    BINARY = "binary"
    ORDINAL = "ordinal"
    COUNT = "count"
    MIXED = "mixed"


class CoefRegime(str, Enum):
    BALANCED = "balanced"      # |L| uniform on [0.1, 1] with random sign
    UNBALANCED = "unbalanced"  # L uniform on [0.1, 1]


class ScenarioConfig(BaseModel):
    """One simulation cell: DAG class x variable class x sample size"""
    q: int = Field(default=20, ge=2)
    n: int = Field(default=500, ge=1)
    dag_class: DagClass = DagClass.FREE
    var_class: VarClass = VarClass.MIXED
    edge_prob: float = Field(default=0.1, gt=0.0, lt=1.0)
    coef_regime: CoefRegime = CoefRegime.BALANCED
    replicate_seed: int = 0
    responses: List[int] = Field(default_factory=lambda: [0, 1, 2])


class SimulatedScenario(BaseModel):
    """True DAG, SEM parameters, latent data and observed data of one replicate"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    config: ScenarioConfig
    dag: Dag
    constraints: EdgeConstraints
    params: CholeskyParams
    Z: np.ndarray
    data: ObservedData


class ReplicateResult(BaseModel):
    """Outcome of simulate -> fit -> summarize -> metrics on one replicate"""
    index: int
    seed: int
    n_true_edges: int
    n_estimated_edges: int
    metrics: Metrics
    auc: float
    acceptance_rate: Optional[float] = None
    seconds: float = 0.0
