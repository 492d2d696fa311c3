"""Exception types shared across the package."""

from __future__ import annotations


class EdgeIdealError(Exception):
    """Base class for all errors raised by edgeideal."""


class NotBipartiteError(EdgeIdealError):
    def __init__(self, message: str = "graph is not bipartite", witness=None):
        super().__init__(message)
        self.witness = witness


class NotConnectedError(EdgeIdealError):
    pass


class SubsetOutOfRangeError(EdgeIdealError):
    pass


class EmptySubsetError(EdgeIdealError):
    pass


class FaceLimitExceededError(EdgeIdealError):
    def __init__(self, message: str, subset=None):
        super().__init__(message)
        self.subset = subset


class TooManyVerticesError(EdgeIdealError):
    pass


class EmptyIdealError(EdgeIdealError):
    pass


class PreconditionViolatedError(EdgeIdealError):
    pass


class ParseError(EdgeIdealError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConsistencyError(EdgeIdealError):
    """An internal cross-check (Euler characteristic, H~_0 count, ...) failed."""
