"""Exception hierarchy shared by every package"""
from typing import Optional


class CopulaDagError(Exception):
    """Base class for all errors raised by this project"""


class ConfigError(CopulaDagError, ValueError):
    """Invalid or inconsistent configuration value"""

    def __init__(self, message: str, key: Optional[str] = None):
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)


class DataValidationError(CopulaDagError, ValueError):
    """Observed data rejected at ingestion"""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        self.row = row
        self.column = column
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column '{column}'")
        prefix = f"[{', '.join(location)}] " if location else ""
        super().__init__(prefix + message)


class ConstraintViolationError(CopulaDagError, ValueError):
    """A DAG contains an edge forbidden by the structural constraints"""


class GraphFormatError(CopulaDagError, ValueError):
    """Malformed edge-list or constraints file"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NumericalError(CopulaDagError, ArithmeticError):
    """Non-finite value or non positive-definite block in an update"""

    def __init__(self, message: str, state=None):
        self.state = state
        super().__init__(message)


class SamplerError(CopulaDagError, RuntimeError):
    """The Markov chain cannot proceed (e.g. no admissible move)"""


class EmptyRecordError(CopulaDagError, ValueError):
    """A summary was requested from a chain record without samples"""
