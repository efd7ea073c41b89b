"""Gaussian copula link: rank bounds, truncated normal draws, latent data updates"""
from .truncnorm import TAIL_CUTOFF, sample_truncated_normal, truncated_normal_draws
from .rank_likelihood import (
    ColumnRanks,
    column_ranks,
    in_rank_set,
    init_latent,
    level_codes,
    rank_bounds,
    refresh_latent,
)

__all__ = [
    "TAIL_CUTOFF",
    "sample_truncated_normal",
    "truncated_normal_draws",
    "ColumnRanks",
    "column_ranks",
    "in_rank_set",
    "init_latent",
    "level_codes",
    "rank_bounds",
    "refresh_latent",
]
