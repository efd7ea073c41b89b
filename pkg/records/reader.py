"""Load chain records written by the CSV and npz sinks"""
import json
from pathlib import Path

import numpy as np
import pandas as pd

from errors import GraphFormatError
from models import ChainRecord, ChainSample
from .base_record_sink import from_lower_triangle
from .csv_sink import LABELS_PREFIX


def _parse_edges(text) -> tuple:
    if not isinstance(text, str) or not text.strip():
        return ()
    edges = []
    for token in text.split():
        u, v = token.split(">")
        edges.append((int(u), int(v)))
    return tuple(edges)


def _q_from_triangle(m: int) -> int:
    q = int((np.sqrt(8 * m + 1) - 1) / 2)
    if q * (q + 1) // 2 != m:
        raise GraphFormatError(f"{m} sigma columns do not form a lower triangle")
    return q


def _load_csv(path: Path) -> ChainRecord:
    with open(path, "r") as f:
        first = f.readline()
    labels = []
    skip = 0
    if first.startswith(LABELS_PREFIX):
        labels = json.loads(first[len(LABELS_PREFIX):])
        skip = 1
    frame = pd.read_csv(path, skiprows=skip, dtype={"edges": str}, keep_default_na=False, float_precision="round_trip")
    sigma_cols = [c for c in frame.columns if c.startswith("sigma_")]
    q = _q_from_triangle(len(sigma_cols))
    record = ChainRecord(q=q, labels=labels)
    values = frame[sigma_cols].to_numpy(dtype=float)
    for row, lower in zip(frame.itertuples(index=False), values):
        record.append(ChainSample(
            iteration=int(row.iteration),
            edges=_parse_edges(row.edges),
            accepted=bool(int(row.accepted)),
            sigma=from_lower_triangle(lower, q),
        ))
    return record


def _load_npz(path: Path) -> ChainRecord:
    with np.load(path, allow_pickle=False) as archive:
        q = int(archive["q"])
        record = ChainRecord(q=q, labels=[str(x) for x in archive["labels"]])
        for iteration, accepted, edges, lower in zip(
            archive["iterations"], archive["accepted"], archive["edges"], archive["sigma_lower"]
        ):
            record.append(ChainSample(
                iteration=int(iteration),
                edges=_parse_edges(str(edges)),
                accepted=bool(accepted),
                sigma=from_lower_triangle(lower, q),
            ))
    return record


def load_chain_record(path) -> ChainRecord:
    """Read a chain record; the format follows the file suffix"""
    path = Path(path)
    if path.suffix == ".npz":
        return _load_npz(path)
    return _load_csv(path)
