"""Exception types shared across the package.

All user-input problems (bad schema files, off-grid evaluation rows,
malformed graph exports) raise :class:`InputError` subclasses so the CLI
can map them to exit code 2; anything else is an internal error (exit 3).
"""


class HplandError(Exception):
    """Base class for all package errors."""


class InputError(HplandError):
    """User-supplied file or argument is invalid."""


class SchemaError(InputError):
    """Search-space schema file is malformed."""


class EvaluationsError(InputError):
    """Evaluations table violates the declared search space."""


class GraphFormatError(InputError):
    """Graph-export JSON is malformed or inconsistent."""
