"""The three full-conditional updates of one sweep"""
import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np

from copula import ColumnRanks, refresh_latent
from errors import NumericalError, SamplerError
from gaussian_dag import log_node_marginal, log_prior_ratio, posterior_suffstat, sample_params_posterior
from graph import apply_move, enumerate_moves
from models import ChainState, Dag, DagWishartHyper, McmcConfig, Move, ObservedData

logger = logging.getLogger(__name__)

# log-ratios are clamped to this magnitude before exponentiation
LOG_RATIO_CLAMP = 700.0


def log_marginal_ratio(
    dag: Dag,
    d_star: Dag,
    move: Move,
    hyper: DagWishartHyper,
    u_tilde: np.ndarray,
    n: int,
) -> float:
    """Node-local marginal likelihood ratio: only nodes whose parent set changes contribute"""
    current_parents = dag.parent_sets
    proposed_parents = d_star.parent_sets
    total = 0.0
    for v in move.affected_nodes:
        total += log_node_marginal(v, proposed_parents[v], hyper, u_tilde, n)
        total -= log_node_marginal(v, current_parents[v], hyper, u_tilde, n)
    return total


def log_acceptance_ratio(
    dag: Dag,
    d_star: Dag,
    move: Move,
    config: McmcConfig,
    u_tilde: np.ndarray,
    n: int,
    n_moves: int,
    n_moves_star: int,
) -> float:
    """log r = marginal ratio + prior ratio + log(|O_D| / |O_D*|)"""
    return (
        log_marginal_ratio(dag, d_star, move, config.wishart, u_tilde, n)
        + log_prior_ratio(d_star, dag, config.graph_prior)
        + math.log(n_moves)
        - math.log(n_moves_star)
    )


def conjugate_param_step(state: ChainState, config: McmcConfig, rng: np.random.Generator) -> ChainState:
    """Redraw (D, L) from the DAG-Wishart posterior given the current DAG and Z"""
    params = sample_params_posterior(state.dag, config.wishart, state.Z, rng, u_tilde=state.u_tilde)
    return state.model_copy(update={"params": params})


def propose_move(
    state: ChainState, config: McmcConfig, rng: np.random.Generator
) -> Tuple[Move, Dag, int, int]:
    """Uniform draw from O_D; returns the move, D*, |O_D| and |O_D*|"""
    moves = enumerate_moves(state.dag, config.constraints)
    if not moves:
        raise SamplerError("no admissible move: the constraints forbid every edge")
    move = moves[int(rng.integers(len(moves)))]
    d_star = apply_move(state.dag, move)
    return move, d_star, len(moves), len(enumerate_moves(d_star, config.constraints))


def mh_dag_step(state: ChainState, config: McmcConfig, rng: np.random.Generator) -> ChainState:
    """
    One Metropolis-Hastings move on the DAG with (D, L) integrated out for
    the affected nodes. After an accepted move the affected nodes'
    parameters are redrawn when ``resample_after_accept`` is set.
    """
    move, d_star, n_moves, n_moves_star = propose_move(state, config, rng)
    try:
        log_r = log_acceptance_ratio(state.dag, d_star, move, config, state.u_tilde, state.n, n_moves, n_moves_star)
    except NumericalError as exc:
        logger.warning("rejecting %s %d->%d at iteration %d: %s", move.move_type.value, move.u, move.v, state.iteration, exc)
        log_r = -math.inf
    if math.isnan(log_r) or (math.isinf(log_r) and log_r > 0):
        logger.warning("rejecting %s %d->%d at iteration %d: non-finite log ratio", move.move_type.value, move.u, move.v, state.iteration)
        log_r = -math.inf
    if log_r == -math.inf:
        return state.model_copy(update={"accepted": False})
    log_r = min(max(log_r, -LOG_RATIO_CLAMP), LOG_RATIO_CLAMP)

    accepted = rng.random() < math.exp(log_r)
    if not accepted:
        return state.model_copy(update={"accepted": False})

    params = state.params
    if config.resample_after_accept:
        params = sample_params_posterior(
            d_star, config.wishart, state.Z, rng,
            u_tilde=state.u_tilde, nodes=move.affected_nodes, current=state.params,
        )
    return state.model_copy(update={"dag": d_star, "params": params, "accepted": True})


def latent_step(
    state: ChainState,
    data: ObservedData,
    config: McmcConfig,
    rng: np.random.Generator,
    ranks: Optional[Sequence[ColumnRanks]] = None,
) -> ChainState:
    """Refresh Z inside A(X) and recompute U~ = U + Z^T Z"""
    Z = refresh_latent(data, state.Z, state.params, state.dag, rng, mode=config.latent_update, ranks=ranks)
    return state.model_copy(update={"Z": Z, "u_tilde": posterior_suffstat(config.wishart, Z)})
