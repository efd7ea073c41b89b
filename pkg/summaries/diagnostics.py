"""Convergence diagnostics: running posterior means and two-chain agreement"""
from typing import Iterable, Tuple

import numpy as np
import pandas as pd

from models import AgreementReport, ChainRecord
from .posterior import bma_sigma, correlation_stack, cumulative_mean, edge_probabilities


def running_means(record: ChainRecord, entries: Iterable[Tuple[int, int]]) -> pd.DataFrame:
    """Cumulative mean of the requested correlation entries after each recorded sample"""
    trajectory = cumulative_mean(correlation_stack(record))
    frame = pd.DataFrame({"sample": np.arange(1, len(record) + 1), "iteration": record.iterations})
    for u, v in entries:
        if not (0 <= u < record.q and 0 <= v < record.q):
            raise IndexError(f"entry ({u}, {v}) outside a {record.q} x {record.q} matrix")
        frame[f"corr_{u}_{v}"] = trajectory[:, u, v]
    return frame


def chain_agreement(record_a: ChainRecord, record_b: ChainRecord) -> AgreementReport:
    """Max and mean absolute differences of edge probabilities and averaged correlations"""
    if record_a.q != record_b.q:
        raise ValueError(f"chains cover {record_a.q} and {record_b.q} nodes")
    off_diagonal = ~np.eye(record_a.q, dtype=bool)
    edge_diff = np.abs(edge_probabilities(record_a) - edge_probabilities(record_b))[off_diagonal]
    corr_diff = np.abs(bma_sigma(record_a)[1] - bma_sigma(record_b)[1])[off_diagonal]
    if edge_diff.size == 0:
        edge_diff = corr_diff = np.zeros(1)
    return AgreementReport(
        max_edge_prob_diff=float(edge_diff.max()),
        mean_edge_prob_diff=float(edge_diff.mean()),
        max_corr_diff=float(corr_diff.max()),
        mean_corr_diff=float(corr_diff.mean()),
    )
