"""In-memory chain record"""
from typing import List, Optional

from models import ChainRecord, ChainSample
from .base_record_sink import BaseRecordSink


class MemoryRecordSink(BaseRecordSink):
    """Keeps every sample in a ChainRecord"""

    def __init__(self, q: int, labels: Optional[List[str]] = None):
        super().__init__(q, labels)
        self.record = ChainRecord(q=q, labels=self.labels)

    def write(self, sample: ChainSample):
        self._check(sample)
        self.record.append(sample)
        self.n_written += 1

    def close(self):
        pass
