"""
CSV chain record.

The first line is a JSON label comment, then one row per sample:
iteration, accepted (0/1), edges ("u>v" pairs separated by spaces) and
the lower triangle of Sigma as sigma_i_j columns.
"""
import json
from pathlib import Path
from typing import List, Optional

from models import ChainSample
from .base_record_sink import BaseRecordSink, lower_triangle, sigma_columns

LABELS_PREFIX = "# labels="


class CsvRecordSink(BaseRecordSink):
    """Streams samples to a CSV file as they arrive"""

    def __init__(self, path, q: int, labels: Optional[List[str]] = None):
        super().__init__(q, labels)
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._file = open(self.path, "w", newline="")
        self._file.write(LABELS_PREFIX + json.dumps(self.labels) + "\n")
        self._file.write(",".join(["iteration", "accepted", "edges"] + sigma_columns(q)) + "\n")

    def write(self, sample: ChainSample):
        self._check(sample)
        edges = " ".join(f"{u}>{v}" for u, v in sorted(sample.edges))
        values = ",".join(format(float(x), ".17g") for x in lower_triangle(sample.sigma))
        self._file.write(f"{sample.iteration},{int(sample.accepted)},{edges},{values}\n")
        self.n_written += 1

    def close(self):
        if not self._file.closed:
            self._file.close()
