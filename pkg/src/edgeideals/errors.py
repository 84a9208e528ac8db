"""Shared exception types."""


class GuardError(ValueError):
    """A scale guard (vertex count, generator count, recursion size) was exceeded."""


class FormatError(ValueError):
    """A text record (graph6 line, monomial string) is malformed."""
