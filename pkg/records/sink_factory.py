"""Record sink factory to create the configured sink"""
import logging
from typing import List, Optional

from config import Config
from errors import ConfigError
from .base_record_sink import BaseRecordSink
from .csv_sink import CsvRecordSink
from .memory_sink import MemoryRecordSink
from .npz_sink import NpzRecordSink

logger = logging.getLogger(__name__)


class RecordSinkFactory:
    """Factory to create record sink instances"""

    @staticmethod
    def create_sink(
        path=None,
        q: int = 1,
        labels: Optional[List[str]] = None,
        record_format: Optional[str] = None,
    ) -> BaseRecordSink:
        """Create a sink for ``record_format`` (default: mcmc.record_format); no path means in-memory"""
        if path is None:
            return MemoryRecordSink(q, labels)
        record_format = record_format or Config.RECORD_FORMAT
        if record_format == "csv":
            logger.debug("chain record -> CSV %s", path)
            return CsvRecordSink(path, q, labels)
        if record_format == "npz":
            logger.debug("chain record -> npz %s", path)
            return NpzRecordSink(path, q, labels)
        raise ConfigError(f"unknown record format '{record_format}'", key="mcmc.record_format")
