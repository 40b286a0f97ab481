"""Exception hierarchy shared by every triad module."""

from __future__ import annotations


class TriadError(Exception):
    """Base class for all errors raised by the package."""


class ExactOverflowError(TriadError, OverflowError):
    """A rational value no longer fits the bounded integer capacity."""


class ZeroDenominatorError(TriadError, ZeroDivisionError):
    pass


class DomainError(TriadError, ValueError):
    pass


class DimensionError(TriadError, ValueError):
    pass


class InteriorPointError(TriadError, ValueError):
    pass


class VertexLookupError(TriadError, KeyError):
    pass


class EvaluationError(TriadError):
    """The objective returned something unusable (wrong length, NaN, inf, crash)."""


class ScriptError(TriadError):
    pass


class ConfigError(TriadError, ValueError):
    pass


class RenderError(TriadError):
    pass


class ResourceError(TriadError):
    pass
