"""Beta-Bernoulli prior on the DAG skeleton"""
import math

from scipy.special import gammaln

from models import Dag, GraphPriorHyper


def max_skeleton_size(q: int) -> int:
    """M = q (q - 1) / 2 unordered pairs"""
    return q * (q - 1) // 2


def log_skeleton_prior_size(n_edges: int, q: int, hyper: GraphPriorHyper) -> float:
    """log p(S) for a skeleton with ``n_edges`` edges, with the inclusion probability integrated out"""
    m = max_skeleton_size(q)
    if not 0 <= n_edges <= m:
        raise ValueError(f"{n_edges} edges impossible over {q} nodes")
    c, d = hyper.c, hyper.d
    return float(
        gammaln(n_edges + c)
        + gammaln(m - n_edges + d)
        - gammaln(m + c + d)
        + gammaln(c + d)
        - gammaln(c)
        - gammaln(d)
    )


def log_skeleton_prior(dag: Dag, hyper: GraphPriorHyper) -> float:
    return log_skeleton_prior_size(dag.n_edges, dag.q, hyper)


def log_prior_ratio(d_star: Dag, d: Dag, hyper: GraphPriorHyper) -> float:
    """log p(D*) - log p(D); zero for a reversal"""
    if d_star.q != d.q:
        raise ValueError(f"DAGs have different node counts ({d_star.q} vs {d.q})")
    k_star, k = d_star.n_edges, d.n_edges
    if k_star == k:
        return 0.0
    m = max_skeleton_size(d.q)
    if abs(k_star - k) == 1:
        smaller = min(k_star, k)
        log_insert = math.log((smaller + hyper.c) / (m - smaller - 1 + hyper.d))
        return log_insert if k_star > k else -log_insert
    return log_skeleton_prior(d_star, hyper) - log_skeleton_prior(d, hyper)
