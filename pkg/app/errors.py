from __future__ import annotations

from typing import Any


class SuckersBetError(Exception):
    """Base class; `exit_code` is what the CLI returns for it."""

    exit_code: int = 1


class DimensionError(SuckersBetError, ValueError):
    exit_code = 2


class NormalizationError(SuckersBetError, ValueError):
    exit_code = 2


class UnsupportedSymmetryError(SuckersBetError, ValueError):
    exit_code = 2


class DomainError(SuckersBetError, ValueError):
    exit_code = 2


class OutputError(SuckersBetError):
    """--output or --dump-poly could not be written."""

    exit_code = 2


class SizeLimitError(SuckersBetError):
    exit_code = 3


class PrecisionError(SuckersBetError):
    exit_code = 4


class DegreeBoundError(SuckersBetError):
    exit_code = 4


class InvariantViolation(SuckersBetError):
    exit_code = 5

    def __init__(self, message: str, counterexample: Any | None = None):
        super().__init__(message)
        self.counterexample = counterexample
