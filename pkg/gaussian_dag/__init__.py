"""Gaussian DAG model: DAG-Wishart prior, conjugate posterior and skeleton prior"""
from .skeleton_prior import (
    log_prior_ratio,
    log_skeleton_prior,
    log_skeleton_prior_size,
    max_skeleton_size,
)
from .dag_wishart import (
    exact_dag_posterior,
    log_dag_score,
    log_node_marginal,
    node_shape,
    posterior_suffstat,
    sample_params_posterior,
    sample_params_prior,
)
from .covariance import correlation_from_sigma, precision_from_params, sigma_from_params

__all__ = [
    "log_prior_ratio",
    "log_skeleton_prior",
    "log_skeleton_prior_size",
    "max_skeleton_size",
    "exact_dag_posterior",
    "log_dag_score",
    "log_node_marginal",
    "node_shape",
    "posterior_suffstat",
    "sample_params_posterior",
    "sample_params_prior",
    "correlation_from_sigma",
    "precision_from_params",
    "sigma_from_params",
]
