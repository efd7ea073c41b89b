"""Chain record sinks and readers"""
from .base_record_sink import BaseRecordSink, from_lower_triangle, lower_triangle, sigma_columns
from .memory_sink import MemoryRecordSink
from .csv_sink import CsvRecordSink
from .npz_sink import NpzRecordSink
from .sink_factory import RecordSinkFactory
from .reader import load_chain_record

__all__ = [
    "BaseRecordSink",
    "from_lower_triangle",
    "lower_triangle",
    "sigma_columns",
    "MemoryRecordSink",
    "CsvRecordSink",
    "NpzRecordSink",
    "RecordSinkFactory",
    "load_chain_record",
]
