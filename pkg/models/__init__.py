"""Data models for the copula DAG sampler"""
from .graph import Cpdag, Dag, Edge, EdgeConstraints, Move, MoveType, topological_sort
from .params import CholeskyParams, DagWishartHyper, GraphPriorHyper
from .data import LatentMatrix, ObservedData, VariableType
from .chain import ChainRecord, ChainSample, ChainState, McmcConfig
from .summary import AgreementReport, Metrics, MpmEstimate, PosteriorSummary
from .scenario import CoefRegime, DagClass, ReplicateResult, ScenarioConfig, SimulatedScenario, VarClass

__all__ = [
    "Cpdag",
    "Dag",
    "Edge",
    "EdgeConstraints",
    "Move",
    "MoveType",
    "topological_sort",
    "CholeskyParams",
    "DagWishartHyper",
    "GraphPriorHyper",
    "LatentMatrix",
    "ObservedData",
    "VariableType",
    "ChainRecord",
    "ChainSample",
    "ChainState",
    "McmcConfig",
    "AgreementReport",
    "Metrics",
    "MpmEstimate",
    "PosteriorSummary",
    "CoefRegime",
    "DagClass",
    "ReplicateResult",
    "ScenarioConfig",
    "SimulatedScenario",
    "VarClass",
]
