"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An enumeration or lattice construction exceeded its configured budget."""


class InternalCheckError(AssertionError):
    """Two independent computation paths that must agree did not.

    This always indicates a bug in this library, never in the input.
    """


class InputError(ValueError):
    """Malformed or schema-violating input data."""
