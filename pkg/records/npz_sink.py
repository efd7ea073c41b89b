"""Binary chain record (numpy .npz), written when the sink is closed"""
from pathlib import Path
from typing import List, Optional

import numpy as np

from models import ChainSample
from .base_record_sink import BaseRecordSink, lower_triangle


class NpzRecordSink(BaseRecordSink):
    """Buffers samples and stores them as compressed arrays"""

    def __init__(self, path, q: int, labels: Optional[List[str]] = None):
        super().__init__(q, labels)
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._iterations: List[int] = []
        self._accepted: List[bool] = []
        self._edges: List[str] = []
        self._sigma: List[np.ndarray] = []
        self._closed = False

    def write(self, sample: ChainSample):
        self._check(sample)
        self._iterations.append(sample.iteration)
        self._accepted.append(bool(sample.accepted))
        self._edges.append(" ".join(f"{u}>{v}" for u, v in sorted(sample.edges)))
        self._sigma.append(lower_triangle(sample.sigma))
        self.n_written += 1

    def close(self):
        if self._closed:
            return
        m = self.q * (self.q + 1) // 2
        np.savez_compressed(
            self.path,
            q=np.array(self.q),
            labels=np.array(self.labels),
            iterations=np.array(self._iterations, dtype=np.int64),
            accepted=np.array(self._accepted, dtype=bool),
            edges=np.array(self._edges, dtype=str),
            sigma_lower=np.array(self._sigma).reshape(len(self._sigma), m),
        )
        self._closed = True
