"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class MahlerError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(MahlerError, ValueError):
    """A parameter lies outside the domain of an operation (e.g. a = 1)."""


class OrderMismatchError(MahlerError, ValueError):
    """Two truncated series with different truncation orders were combined."""


class LevelError(MahlerError):
    """Cyclotomic levels are incompatible, or exceed the configured bound."""


class BudgetError(MahlerError):
    """A computation would exceed the configured degree or order budget."""
