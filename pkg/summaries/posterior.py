"""
Posterior summaries of a chain record: DAG and edge probabilities, the
thresholded (median probability) graph and model-averaged covariance.
"""
import logging
from collections import Counter
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import EmptyRecordError
from gaussian_dag import correlation_from_sigma
from graph import is_acyclic, to_cpdag
from models import ChainRecord, Dag, Edge, MpmEstimate, PosteriorSummary

logger = logging.getLogger(__name__)


def _require_samples(record: ChainRecord):
    if len(record) == 0:
        raise EmptyRecordError("chain record has no post-burn-in samples")


def edge_probabilities(record: ChainRecord) -> np.ndarray:
    """Fraction of samples whose DAG contains u -> v"""
    _require_samples(record)
    counts = np.zeros((record.q, record.q))
    for edges in record.edges:
        for u, v in edges:
            counts[u, v] += 1
    return counts / len(record)


def dag_frequencies(record: ChainRecord) -> Dict[str, float]:
    """Visit frequency of every sampled DAG keyed by its canonical edge string, most frequent first"""
    _require_samples(record)
    keys = Counter(" ".join(f"{u}>{v}" for u, v in sorted(edges)) for edges in record.edges)
    total = len(record)
    ordered = sorted(keys.items(), key=lambda item: (-item[1], item[0]))
    return {key: count / total for key, count in ordered}


def most_probable_dags(record: ChainRecord, top: int = 10) -> List[Tuple[Dag, float]]:
    freq = dag_frequencies(record)
    return [(Dag.from_key(record.q, key), p) for key, p in list(freq.items())[:top]]


def threshold_edges(edge_prob: np.ndarray, k: float) -> List[Edge]:
    """Directed pairs with probability >= k, diagonal excluded"""
    above = np.array(edge_prob) >= k
    np.fill_diagonal(above, False)
    rows, cols = np.nonzero(above)
    return [(int(u), int(v)) for u, v in zip(rows, cols)]


def mpm_dag(edge_prob: np.ndarray, k: float = 0.5) -> MpmEstimate:
    """
    Graph of edges with probability >= k (k = 0.5 gives the median probability model).

    When the raw graph has both orientations of a pair or a cycle, edges
    are re-added in decreasing probability and any edge that would break
    acyclicity is dropped and listed in ``conflicts``.
    """
    edge_prob = np.asarray(edge_prob, dtype=float)
    q = edge_prob.shape[0]
    raw = threshold_edges(edge_prob, k)
    raw_set = set(raw)
    is_dag = all((v, u) not in raw_set for u, v in raw) and is_acyclic(q, raw)

    if is_dag:
        kept = raw
        conflicts: List[Edge] = []
    else:
        kept = []
        conflicts = []
        for u, v in sorted(raw, key=lambda e: (-edge_prob[e], e)):
            if (v, u) not in kept and is_acyclic(q, kept + [(u, v)]):
                kept.append((u, v))
            else:
                conflicts.append((u, v))
        logger.warning(
            "thresholded graph at k=%.3f is not a DAG; dropped %d edge(s): %s",
            k, len(conflicts), conflicts,
        )

    dag = Dag(q=q, edges=frozenset(kept))
    return MpmEstimate(
        q=q,
        threshold=k,
        raw_edges=tuple(sorted(raw)),
        is_dag=is_dag,
        conflicts=tuple(sorted(conflicts)),
        dag=dag,
        cpdag=to_cpdag(dag),
    )


def correlation_stack(record: ChainRecord) -> np.ndarray:
    """Per-sample correlation matrices, samples x q x q"""
    _require_samples(record)
    return np.stack([correlation_from_sigma(sigma) for sigma in record.sigmas])


def cumulative_mean(stack: np.ndarray) -> np.ndarray:
    """Running mean along the sample axis; the last slice is the full mean"""
    counts = np.arange(1, stack.shape[0] + 1, dtype=float)
    return np.cumsum(stack, axis=0) / counts[:, None, None]


def bma_sigma(record: ChainRecord) -> Tuple[np.ndarray, np.ndarray]:
    """Model-averaged covariance, and the average of per-sample correlation matrices"""
    _require_samples(record)
    sigma_bma = record.sigma_stack.mean(axis=0)
    corr_bma = cumulative_mean(correlation_stack(record))[-1]
    return sigma_bma, corr_bma


def summarize(record: ChainRecord, labels: Optional[Sequence[str]] = None) -> PosteriorSummary:
    sigma_bma, corr_bma = bma_sigma(record)
    return PosteriorSummary(
        edge_prob=edge_probabilities(record),
        dag_freq=dag_frequencies(record),
        sigma_bma=sigma_bma,
        corr_bma=corr_bma,
        n_samples=len(record),
        labels=list(labels or record.labels or [f"X{j + 1}" for j in range(record.q)]),
    )
