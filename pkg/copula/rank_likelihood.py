"""
Extended rank likelihood: rank codes of the observed columns, the
order-consistency set A(X), latent initialization and the truncated
normal Gibbs refresh of the latent matrix.

Only the dense rank codes of each column are ever consulted, so any
strictly increasing transform of a column leaves every result and
every random draw unchanged.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import ndtri
from scipy.stats import rankdata

from errors import DataValidationError, NumericalError
from models import CholeskyParams, Dag, ObservedData, topological_sort
from .truncnorm import truncated_normal_draws

logger = logging.getLogger(__name__)


def level_codes(column: np.ndarray) -> np.ndarray:
    """Dense integer codes 0..K-1 of the distinct values, in increasing order"""
    return np.unique(np.asarray(column), return_inverse=True)[1].ravel()


class ColumnRanks:
    """Rows of one column grouped by level, lowest level first"""

    def __init__(self, codes: np.ndarray):
        self.codes = np.asarray(codes, dtype=int)
        self.n_levels = int(self.codes.max()) + 1 if self.codes.size else 0
        self.order = np.argsort(self.codes, kind="stable")
        counts = np.bincount(self.codes, minlength=self.n_levels)
        self.starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
        self.counts = counts

    @classmethod
    def from_column(cls, column: np.ndarray) -> "ColumnRanks":
        return cls(level_codes(column))

    def level_extremes(self, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Per-level minimum and maximum of the latent column"""
        ordered = z[self.order]
        return np.minimum.reduceat(ordered, self.starts), np.maximum.reduceat(ordered, self.starts)

    def level_rows(self, level: int) -> np.ndarray:
        start = self.starts[level]
        return self.order[start:start + self.counts[level]]


def column_ranks(X: ObservedData) -> List[ColumnRanks]:
    return [ColumnRanks.from_column(X.X[:, j]) for j in range(X.q)]


def rank_bounds(X: ObservedData, Z: np.ndarray, i: int, j: int) -> Tuple[float, float]:
    """
    (max z[k, j] over x[k, j] < x[i, j], min z[k, j] over x[k, j] > x[i, j]);
    -inf / +inf when the defining set is empty. Ties impose nothing.
    """
    column = X.X[:, j]
    value = column[i]
    below = Z[column < value, j]
    above = Z[column > value, j]
    lower = float(below.max()) if below.size else -np.inf
    upper = float(above.min()) if above.size else np.inf
    return lower, upper


def in_rank_set(X: ObservedData, Z: np.ndarray, ranks: Optional[Sequence[ColumnRanks]] = None) -> bool:
    """Does Z order every column consistently with X (strictly across levels)?"""
    Z = np.asarray(Z)
    if Z.shape != X.X.shape:
        return False
    if ranks is None:
        ranks = column_ranks(X)
    for j, column in enumerate(ranks):
        low, high = column.level_extremes(Z[:, j])
        if not np.all(high[:-1] < low[1:]):
            return False
    return True


def init_latent(X: ObservedData) -> np.ndarray:
    """
    z[i, j] = Phi^-1((r[i, j] - 0.5) / n) with r the mid-rank; tied rows are
    then spread deterministically (row order) over a quarter of the gap to
    the nearest neighbouring level.
    """
    n, q = X.X.shape
    Z = np.empty((n, q))
    for j in range(q):
        column = X.X[:, j]
        ranks = ColumnRanks.from_column(column)
        if ranks.n_levels < 2:
            raise DataValidationError("constant column", column=X.labels[j])
        mid = rankdata(column, method="average")
        base = ndtri((mid - 0.5) / n)

        level_value = base[ranks.order][ranks.starts]
        gaps = np.diff(level_value)
        nearest = np.minimum(np.append(gaps, np.inf), np.insert(gaps, 0, np.inf))
        for level in np.flatnonzero(ranks.counts > 1):
            rows = ranks.level_rows(level)
            size = rows.size
            offsets = (np.arange(size) - (size - 1) / 2.0) / (size - 1)
            base[rows] = level_value[level] + 0.25 * nearest[level] * offsets
        Z[:, j] = base
    return Z


def _column_moments(Z: np.ndarray, params: CholeskyParams, parents: Sequence[int], j: int) -> Tuple[np.ndarray, float]:
    """SEM conditional of column j given its parents: mean -Z[:, pa] L[pa, j], sd sqrt(D_jj)"""
    if parents:
        pa = list(parents)
        mean = -(Z[:, pa] @ params.L[pa, j])
    else:
        mean = np.zeros(Z.shape[0])
    return mean, float(np.sqrt(params.D[j]))


def _refresh_column_blocked(z: np.ndarray, mean: np.ndarray, sd: float, ranks: ColumnRanks, rng) -> np.ndarray:
    """Levels of equal parity drawn jointly; a level's bounds only involve its two neighbours"""
    z = z.copy()
    for parity in (0, 1):
        low, high = ranks.level_extremes(z)
        lower_by_level = np.concatenate(([-np.inf], high[:-1]))
        upper_by_level = np.concatenate((low[1:], [np.inf]))
        rows = np.flatnonzero(ranks.codes % 2 == parity)
        if rows.size == 0:
            continue
        codes = ranks.codes[rows]
        z[rows] = truncated_normal_draws(mean[rows], sd, lower_by_level[codes], upper_by_level[codes], rng)
    return z


def _refresh_column_serial(z: np.ndarray, mean: np.ndarray, sd: float, ranks: ColumnRanks, rng) -> np.ndarray:
    """Row-by-row Gibbs update in row order"""
    z = z.copy()
    low, high = ranks.level_extremes(z)
    last = ranks.n_levels - 1
    for i in range(z.size):
        level = ranks.codes[i]
        lower = high[level - 1] if level > 0 else -np.inf
        upper = low[level + 1] if level < last else np.inf
        z[i] = truncated_normal_draws(mean[i], sd, lower, upper, rng)
        level_z = z[ranks.level_rows(level)]
        low[level], high[level] = level_z.min(), level_z.max()
    return z


def refresh_latent(
    X: ObservedData,
    Z: np.ndarray,
    params: CholeskyParams,
    dag: Dag,
    rng: np.random.Generator,
    mode: str = "blocked",
    ranks: Optional[Sequence[ColumnRanks]] = None,
) -> np.ndarray:
    """
    Resample every latent entry from its truncated SEM conditional.

    Columns are visited in a topological order of ``dag`` so children see
    refreshed parents. Returns a new matrix that stays in A(X).
    """
    if mode not in ("blocked", "serial"):
        raise ValueError(f"unknown latent update mode '{mode}'")
    if ranks is None:
        ranks = column_ranks(X)
    order = topological_sort(dag.q, dag.edges)
    parent_sets = dag.parent_sets
    refresh_column = _refresh_column_blocked if mode == "blocked" else _refresh_column_serial

    Z = np.array(Z, dtype=float)
    for j in order:
        mean, sd = _column_moments(Z, params, parent_sets[j], j)
        Z[:, j] = refresh_column(Z[:, j], mean, sd, ranks[j], rng)
    if not np.all(np.isfinite(Z)):
        raise NumericalError("non-finite latent value after refresh")
    return Z
