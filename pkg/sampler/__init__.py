"""PAS Metropolis-within-Gibbs sampler for copula DAG models"""
from .steps import (
    LOG_RATIO_CLAMP,
    conjugate_param_step,
    latent_step,
    log_acceptance_ratio,
    log_marginal_ratio,
    mh_dag_step,
    propose_move,
)
from .mcmc import CopulaDagSampler, chain_seeds, dump_state, run_chain, run_chains

__all__ = [
    "LOG_RATIO_CLAMP",
    "conjugate_param_step",
    "latent_step",
    "log_acceptance_ratio",
    "log_marginal_ratio",
    "mh_dag_step",
    "propose_move",
    "CopulaDagSampler",
    "chain_seeds",
    "dump_state",
    "run_chain",
    "run_chains",
]
