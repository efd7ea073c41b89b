"""Structure-recovery metrics: confusion counts, SEN, SPE and SHD"""
from typing import Union

import numpy as np

from graph import shd
from models import Cpdag, Dag, Metrics

Graph = Union[Dag, Cpdag]
MODES = ("skeleton", "directed")


def directed_support(graph: Graph) -> np.ndarray:
    """Boolean q x q matrix of ordered pairs; an undirected CPDAG edge marks both orientations"""
    support = np.zeros((graph.q, graph.q), dtype=bool)
    if isinstance(graph, Dag):
        for u, v in graph.edges:
            support[u, v] = True
        return support
    for u, v in graph.directed:
        support[u, v] = True
    for u, v in graph.undirected:
        support[u, v] = support[v, u] = True
    return support


def pair_mask(q: int, mode: str) -> np.ndarray:
    """Pairs that are scored: upper triangle for skeletons, all off-diagonal cells when directed"""
    if mode == "skeleton":
        return np.triu(np.ones((q, q), dtype=bool), k=1)
    if mode == "directed":
        return ~np.eye(q, dtype=bool)
    raise ValueError(f"unknown metrics mode '{mode}', expected one of {MODES}")


def confusion_counts(estimated: np.ndarray, truth: np.ndarray, mode: str):
    """TP, TN, FP, FN of two directed support matrices"""
    if mode == "skeleton":
        estimated = estimated | estimated.T
        truth = truth | truth.T
    mask = pair_mask(truth.shape[0], mode)
    est, true = estimated[mask], truth[mask]
    tp = int(np.sum(est & true))
    tn = int(np.sum(~est & ~true))
    fp = int(np.sum(est & ~true))
    fn = int(np.sum(~est & true))
    return tp, tn, fp, fn


def rates(tp: int, tn: int, fp: int, fn: int):
    """SEN and SPE; an empty denominator scores 1 (nothing to find or nothing to avoid)"""
    sen = tp / (tp + fn) if tp + fn > 0 else 1.0
    spe = tn / (tn + fp) if tn + fp > 0 else 1.0
    return sen, spe


def confusion_and_rates(estimated: Graph, truth: Graph, mode: str = "skeleton") -> Metrics:
    if estimated.q != truth.q:
        raise ValueError(f"graphs have different node counts ({estimated.q} vs {truth.q})")
    tp, tn, fp, fn = confusion_counts(directed_support(estimated), directed_support(truth), mode)
    sen, spe = rates(tp, tn, fp, fn)
    distance = shd(estimated, truth)
    n_edges = max(estimated.n_edges, truth.n_edges, 1)
    return Metrics(
        tp=tp, tn=tn, fp=fp, fn=fn,
        sen=sen, spe=spe,
        shd=distance, shd_ratio=distance / n_edges,
        mode=mode,
    )
