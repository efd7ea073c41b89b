"""Labelled CSV output of posterior summaries"""
from pathlib import Path
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from models import Dag, PosteriorSummary


def write_matrix_csv(matrix: np.ndarray, labels: Sequence[str], path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(matrix, index=list(labels), columns=list(labels)).to_csv(path)
    return path


def read_matrix_csv(path) -> np.ndarray:
    return pd.read_csv(path, index_col=0).to_numpy(dtype=float)


def write_dag_frequencies(dag_freq: Dict[str, float], q: int, labels: Sequence[str], path) -> Path:
    rows = []
    for rank, (key, p) in enumerate(dag_freq.items(), start=1):
        dag = Dag.from_key(q, key)
        rows.append({
            "rank": rank,
            "probability": p,
            "n_edges": dag.n_edges,
            "edges": " ".join(f"{labels[u]}>{labels[v]}" for u, v in sorted(dag.edges)),
        })
    path = Path(path)
    pd.DataFrame(rows, columns=["rank", "probability", "n_edges", "edges"]).to_csv(path, index=False)
    return path


def write_summary(summary: PosteriorSummary, out_dir) -> List[Path]:
    """edge_prob.csv, sigma_bma.csv, corr_bma.csv and dag_freq.csv in ``out_dir``"""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    q = summary.edge_prob.shape[0]
    return [
        write_matrix_csv(summary.edge_prob, summary.labels, out_dir / "edge_prob.csv"),
        write_matrix_csv(summary.sigma_bma, summary.labels, out_dir / "sigma_bma.csv"),
        write_matrix_csv(summary.corr_bma, summary.labels, out_dir / "corr_bma.csv"),
        write_dag_frequencies(summary.dag_freq, q, summary.labels, out_dir / "dag_freq.csv"),
    ]


def write_frame(frame: pd.DataFrame, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    return path
