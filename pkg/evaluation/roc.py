"""ROC curves over edge-probability thresholds, replicate bands and AUC"""
from typing import Sequence, Union

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid

from models import Cpdag, Dag
from .metrics import confusion_counts, directed_support, rates

ROC_COLUMNS = ["threshold", "tp", "tn", "fp", "fn", "sen", "fpr"]


def roc_points(
    edge_prob: np.ndarray,
    truth: Union[Dag, Cpdag],
    thresholds: Sequence[float],
    mode: str = "skeleton",
) -> pd.DataFrame:
    """One row per threshold k for the graph of edges with probability >= k; fpr = 1 - SPE"""
    if len(thresholds) == 0:
        raise ValueError("threshold grid is empty")
    edge_prob = np.asarray(edge_prob, dtype=float)
    true_support = directed_support(truth)
    rows = []
    for k in thresholds:
        estimated = edge_prob >= k
        np.fill_diagonal(estimated, False)
        tp, tn, fp, fn = confusion_counts(estimated, true_support, mode)
        sen, spe = rates(tp, tn, fp, fn)
        rows.append([float(k), tp, tn, fp, fn, sen, 1.0 - spe])
    return pd.DataFrame(rows, columns=ROC_COLUMNS)


def roc_band(tables: Sequence[pd.DataFrame], low: float = 5.0, high: float = 95.0) -> pd.DataFrame:
    """Per-threshold mean and percentile band of SEN and 1 - SPE across replicates"""
    if not tables:
        raise ValueError("no ROC tables to combine")
    thresholds = tables[0]["threshold"].to_numpy()
    for table in tables[1:]:
        if not np.array_equal(table["threshold"].to_numpy(), thresholds):
            raise ValueError("ROC tables use different threshold grids")
    sen = np.stack([t["sen"].to_numpy() for t in tables])
    fpr = np.stack([t["fpr"].to_numpy() for t in tables])
    return pd.DataFrame({
        "threshold": thresholds,
        "sen_mean": sen.mean(axis=0),
        f"sen_p{low:02.0f}": np.percentile(sen, low, axis=0),
        f"sen_p{high:02.0f}": np.percentile(sen, high, axis=0),
        "fpr_mean": fpr.mean(axis=0),
        f"fpr_p{low:02.0f}": np.percentile(fpr, low, axis=0),
        f"fpr_p{high:02.0f}": np.percentile(fpr, high, axis=0),
    })


def auc(points: pd.DataFrame, sen_column: str = "sen", fpr_column: str = "fpr") -> float:
    """Trapezoidal area under the ROC staircase closed at (0, 0) and (1, 1)"""
    fpr = np.concatenate(([0.0], points[fpr_column].to_numpy(dtype=float), [1.0]))
    sen = np.concatenate(([0.0], points[sen_column].to_numpy(dtype=float), [1.0]))
    order = np.lexsort((sen, fpr))
    return float(trapezoid(sen[order], fpr[order]))
