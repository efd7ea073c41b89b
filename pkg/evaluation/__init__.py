"""Evaluation of recovered structures: SEN / SPE / SHD, ROC bands and timing"""
from .metrics import MODES, confusion_and_rates, confusion_counts, directed_support, pair_mask, rates
from .roc import ROC_COLUMNS, auc, roc_band, roc_points
from .timing import TIMING_COLUMNS, timing_report

__all__ = [
    "MODES",
    "confusion_and_rates",
    "confusion_counts",
    "directed_support",
    "pair_mask",
    "rates",
    "ROC_COLUMNS",
    "auc",
    "roc_band",
    "roc_points",
    "TIMING_COLUMNS",
    "timing_report",
]
