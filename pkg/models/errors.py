from typing import Optional


class AlistFormatError(ValueError):
    """Malformed alist text; `line` is 1-based in the source text"""

    def __init__(self, line: Optional[int], message: str):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegreeDistributionError(ValueError):
    """Degree distribution is invalid or cannot be realized for (N, M)"""


class ChannelConfigError(ValueError):
    pass


class SpecValidationError(ValueError):
    """Sweep spec or CLI arguments failed validation"""


class LlrFileError(ValueError):
    pass


class InvariantViolation(RuntimeError):
    """Internal consistency check failed (bug, not bad input)"""
