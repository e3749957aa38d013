"""Exception types raised across geobounds.

Every class also derives from the builtin a caller would naturally catch
(`ValueError` for bad inputs, `RuntimeError` for a backend that cannot run),
so code written against plain builtins keeps working.
"""

from __future__ import annotations


class GeoBoundsError(Exception):
    """Base class for all geobounds errors."""


class ContractViolation(GeoBoundsError, ValueError):
    """An operation was called with inputs outside its documented domain."""


class SupportViolation(GeoBoundsError):
    """A negative-power matrix mean needs support(Y) to contain support(X)."""


class UnsupportedDimension(GeoBoundsError, ValueError):
    """A cone has no exact semidefinite representation at this dimension."""


class SolverFailure(GeoBoundsError, RuntimeError):
    """The conic backend could not be run at all."""


class UndefinedTarget(GeoBoundsError, ValueError):
    """A magic-state target with zero min-Thauma was requested."""


class ChannelSpecError(GeoBoundsError, ValueError):
    """A channel specification string could not be parsed."""


class ConfigError(GeoBoundsError, ValueError):
    """A config file entry or environment override is invalid."""
