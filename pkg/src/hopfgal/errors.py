"""Exception types shared across the package.

Exit-code mapping used by the CLI: InputError -> 2, ConsistencyError -> 3,
a failed certificate (no exception, reported in the output) -> 1.
"""


class HopfgalError(Exception):
    """Base class for all package errors."""


class InputError(HopfgalError, ValueError):
    """Malformed or inconsistent user input (shapes, schemas, references)."""


class ConsistencyError(HopfgalError, RuntimeError):
    """An internal cross-check failed; this signals a bug, not bad input."""
