"""Shared exception types."""


class RangeError(ValueError):
    """An argument lies outside the supported range."""


class ResourceLimitError(RuntimeError):
    """A configured budget (nodes, memory, product-of-domains) was exceeded."""


class ShapeError(ValueError):
    """Operator arity or dimension mismatch."""


class ConstructionError(RuntimeError):
    """A guaranteed-to-exist object was not found within the scan bound."""


class UnsupportedDegreeError(ValueError):
    """The operation is only defined for a specific degree."""
