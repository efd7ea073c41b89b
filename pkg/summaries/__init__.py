"""Posterior summaries, convergence diagnostics and CSV export"""
from .posterior import (
    bma_sigma,
    correlation_stack,
    cumulative_mean,
    dag_frequencies,
    edge_probabilities,
    most_probable_dags,
    mpm_dag,
    summarize,
    threshold_edges,
)
from .diagnostics import chain_agreement, running_means
from .export import read_matrix_csv, write_dag_frequencies, write_frame, write_matrix_csv, write_summary

__all__ = [
    "bma_sigma",
    "correlation_stack",
    "cumulative_mean",
    "dag_frequencies",
    "edge_probabilities",
    "most_probable_dags",
    "mpm_dag",
    "summarize",
    "threshold_edges",
    "chain_agreement",
    "running_means",
    "read_matrix_csv",
    "write_dag_frequencies",
    "write_frame",
    "write_matrix_csv",
    "write_summary",
]
