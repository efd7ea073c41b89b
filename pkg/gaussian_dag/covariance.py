"""Covariance, precision and correlation matrices from (D, L)"""
import numpy as np
from scipy.linalg import solve_triangular

from errors import NumericalError
from models import CholeskyParams, topological_sort


def sigma_from_params(params: CholeskyParams) -> np.ndarray:
    """
    Sigma = L^-T D L^-1 via a triangular solve.

    Permuting nodes into a topological order of the support of L makes it
    unit upper triangular; then W = L^-T D^1/2 and Sigma = W W^T.
    """
    q = params.q
    order = topological_sort(q, params.support)
    if order is None:
        raise NumericalError("support of L contains a directed cycle")
    L_perm = params.L[np.ix_(order, order)]
    W = solve_triangular(L_perm.T, np.diag(np.sqrt(params.D[order])), lower=True, unit_diagonal=True)
    sigma = np.empty((q, q))
    sigma[np.ix_(order, order)] = W @ W.T
    return (sigma + sigma.T) / 2.0


def precision_from_params(params: CholeskyParams) -> np.ndarray:
    """Omega = L D^-1 L^T"""
    return (params.L / params.D) @ params.L.T


def correlation_from_sigma(sigma: np.ndarray) -> np.ndarray:
    scale = np.sqrt(np.diag(sigma))
    if not np.all(scale > 0):
        raise NumericalError("covariance matrix has a non-positive variance")
    corr = sigma / np.outer(scale, scale)
    corr = np.clip((corr + corr.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(corr, 1.0)
    return corr
