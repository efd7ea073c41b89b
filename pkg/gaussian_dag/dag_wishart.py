"""
DAG-Wishart prior and its conjugate posterior on the modified Cholesky
parameters, plus the closed-form node marginal likelihood.

Every node j of a DAG D carries an independent Normal-Inverse-Gamma
block (D_jj, L[pa(j), j]) with shape a_j = a + |pa(j)| - q + 1 and the
U blocks U[pa, pa], U[pa, j], U[j | pa]. Data enters only through
U~ = U + Z^T Z and a~_j = a_j + n.
"""
import logging
import math
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import LinAlgError, cho_solve, cholesky, solve_triangular
from scipy.special import gammaln, logsumexp

from errors import NumericalError
from models import CholeskyParams, Dag, DagWishartHyper, GraphPriorHyper
from .skeleton_prior import log_skeleton_prior

logger = logging.getLogger(__name__)

_LOG_2PI = math.log(2.0 * math.pi)


def node_shape(hyper: DagWishartHyper, n_parents: int) -> float:
    return hyper.node_shape(n_parents)


def posterior_suffstat(hyper: DagWishartHyper, Z: np.ndarray) -> np.ndarray:
    """U~ = U + Z^T Z"""
    Z = np.asarray(Z, dtype=float)
    if Z.ndim != 2 or Z.shape[1] != hyper.q:
        raise ValueError(f"Z must have {hyper.q} columns, got shape {Z.shape}")
    return hyper.U + Z.T @ Z


def _block_stats(M: np.ndarray, v: int, pa: Sequence[int]) -> Tuple[float, float, Optional[np.ndarray], Optional[np.ndarray]]:
    """
    log|M[pa, pa]|, M[v | pa] = M_vv - M[v, pa] M[pa, pa]^-1 M[pa, v],
    the upper Cholesky factor of M[pa, pa] and M[pa, v].

    The empty parent block has determinant one.
    """
    if not pa:
        cond = float(M[v, v])
        if not cond > 0:
            raise NumericalError(f"non-positive diagonal entry {cond} at node {v}")
        return 0.0, cond, None, None

    idx = list(pa)
    block = M[np.ix_(idx, idx)]
    cross = M[idx, v]
    try:
        upper = cholesky(block, lower=False)
    except LinAlgError as exc:
        raise NumericalError(f"parent block of node {v} is not positive definite") from exc
    w = solve_triangular(upper.T, cross, lower=True)
    cond = float(M[v, v] - w @ w)
    if not (np.isfinite(cond) and cond > 0):
        raise NumericalError(f"conditional scale of node {v} given {idx} is {cond}")
    logdet = 2.0 * float(np.sum(np.log(np.diag(upper))))
    return logdet, cond, upper, cross


def log_node_marginal(
    v: int,
    pa: Iterable[int],
    hyper: DagWishartHyper,
    u_tilde: np.ndarray,
    n: int,
    a_v: Optional[float] = None,
) -> float:
    """log m(Z_v | Z_pa, D): the ratio of posterior to prior normalizing constants of node v"""
    pa = sorted(pa)
    if a_v is None:
        a_v = hyper.node_shape(len(pa))
    if a_v <= 0:
        raise NumericalError(f"node shape a_{v} = {a_v} is not positive")

    logdet_prior, cond_prior, _, _ = _block_stats(hyper.U, v, pa)
    logdet_post, cond_post, _, _ = _block_stats(u_tilde, v, pa)
    a_post = a_v + n
    return float(
        -0.5 * n * _LOG_2PI
        + 0.5 * (logdet_prior - logdet_post)
        + gammaln(a_post / 2.0)
        - gammaln(a_v / 2.0)
        + 0.5 * a_v * math.log(cond_prior / 2.0)
        - 0.5 * a_post * math.log(cond_post / 2.0)
    )


def log_dag_score(dag: Dag, hyper: DagWishartHyper, u_tilde: np.ndarray, n: int) -> float:
    """Log marginal likelihood of Z under ``dag``: the sum of node marginals"""
    return sum(
        log_node_marginal(v, pa, hyper, u_tilde, n)
        for v, pa in enumerate(dag.parent_sets)
    )


def sample_params_posterior(
    dag: Dag,
    hyper: DagWishartHyper,
    Z: np.ndarray,
    rng: np.random.Generator,
    u_tilde: Optional[np.ndarray] = None,
    nodes: Optional[Iterable[int]] = None,
    current: Optional[CholeskyParams] = None,
) -> CholeskyParams:
    """
    Draw (D, L) from the DAG-Wishart posterior given latent data Z.

    Per node j: D_jj ~ IG(a~_j / 2, U~[j | pa] / 2) and
    L[pa, j] | D_jj ~ N(-U~[pa, pa]^-1 U~[pa, j], D_jj U~[pa, pa]^-1).
    With ``nodes`` only those nodes are redrawn and the remaining columns
    are copied from ``current``.
    """
    n = Z.shape[0]
    if u_tilde is None:
        u_tilde = posterior_suffstat(hyper, Z)
    q = dag.q
    if nodes is None:
        nodes = range(q)
        D = np.ones(q)
        L = np.eye(q)
    else:
        if current is None:
            raise ValueError("partial redraw needs the current parameters")
        D = current.D.copy()
        L = current.L.copy()

    parent_sets = dag.parent_sets
    for j in sorted(nodes):
        pa = list(parent_sets[j])
        a_post = hyper.node_shape(len(pa)) + n
        if a_post <= 0:
            raise NumericalError(f"posterior shape of node {j} is {a_post}")
        _, cond, upper, cross = _block_stats(u_tilde, j, pa)
        D[j] = 1.0 / rng.gamma(a_post / 2.0, 2.0 / cond)
        L[:, j] = 0.0
        L[j, j] = 1.0
        if pa:
            mean = -cho_solve((upper, False), cross)
            noise = solve_triangular(upper, rng.standard_normal(len(pa)), lower=False)
            L[pa, j] = mean + math.sqrt(D[j]) * noise

    if not (np.all(np.isfinite(D)) and np.all(np.isfinite(L))):
        raise NumericalError("non-finite parameter draw")
    return CholeskyParams(D=D, L=L)


def sample_params_prior(dag: Dag, hyper: DagWishartHyper, rng: np.random.Generator) -> CholeskyParams:
    """The n = 0 case of the posterior draw"""
    return sample_params_posterior(dag, hyper, np.zeros((0, dag.q)), rng)


def exact_dag_posterior(
    dags: Sequence[Dag],
    hyper: DagWishartHyper,
    graph_hyper: GraphPriorHyper,
    Z: np.ndarray,
) -> np.ndarray:
    """p(D | Z) over an enumerated DAG space, aligned with ``dags``"""
    u_tilde = posterior_suffstat(hyper, Z)
    n = Z.shape[0]
    log_post: List[float] = [
        log_dag_score(dag, hyper, u_tilde, n) + log_skeleton_prior(dag, graph_hyper)
        for dag in dags
    ]
    log_post = np.asarray(log_post)
    logger.debug("exact posterior over %d DAGs, max log score %.3f", len(dags), log_post.max())
    return np.exp(log_post - logsumexp(log_post))
