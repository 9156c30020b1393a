"""Exception hierarchy shared by all modules.

The CLI maps :class:`PreconditionError` to exit code 1 and
:class:`ResourceLimitError` to exit code 2.
"""

from __future__ import annotations


class LulcError(Exception):
    """Base class for library errors."""


class PreconditionError(LulcError, ValueError):
    """An input violates the documented precondition of an operation."""


class ResourceLimitError(LulcError, RuntimeError):
    """A size guard, exploration cap or step budget was exceeded."""


class FormatError(PreconditionError):
    """Malformed serialized input (edge lists, graph6, matrices, traces)."""
