"""Base chain-record sink interface"""
from abc import ABC, abstractmethod
from typing import List, Optional

import numpy as np

from models import ChainRecord, ChainSample


def sigma_columns(q: int) -> List[str]:
    """Column names of the lower triangle (i >= j) in row-major order"""
    rows, cols = np.tril_indices(q)
    return [f"sigma_{i}_{j}" for i, j in zip(rows, cols)]


def lower_triangle(sigma: np.ndarray) -> np.ndarray:
    return sigma[np.tril_indices(sigma.shape[0])]


def from_lower_triangle(values: np.ndarray, q: int) -> np.ndarray:
    sigma = np.zeros((q, q))
    sigma[np.tril_indices(q)] = values
    return sigma + np.tril(sigma, -1).T


class BaseRecordSink(ABC):
    """Append-only destination for thinned post-burn-in samples"""

    def __init__(self, q: int, labels: Optional[List[str]] = None):
        self.q = q
        self.labels = list(labels) if labels else [f"X{j + 1}" for j in range(q)]
        self.n_written = 0

    @abstractmethod
    def write(self, sample: ChainSample):
        """Append one sample"""
        pass

    @abstractmethod
    def close(self):
        """Flush and release the destination"""
        pass

    def _check(self, sample: ChainSample):
        if sample.sigma.shape != (self.q, self.q):
            raise ValueError(f"sample covariance has shape {sample.sigma.shape}, expected ({self.q}, {self.q})")

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close()
        return False

    def write_record(self, record: ChainRecord):
        """Replay every sample of an in-memory record into this sink"""
        for iteration, edges, accepted, sigma in zip(record.iterations, record.edges, record.accepted, record.sigmas):
            self.write(ChainSample(iteration=iteration, edges=edges, accepted=accepted, sigma=sigma))
