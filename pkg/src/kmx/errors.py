"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class KmxError(Exception):
    """Base class for all package errors."""


class RejectionError(KmxError):
    """Structured validation failure: names the violated rule.

    ``rule`` is a short machine-readable tag (e.g. "gcm-axiom-c"), ``where``
    an optional location such as an index pair.
    """

    def __init__(self, rule: str, message: str, where=None):
        self.rule = rule
        self.where = where
        self.message = message
        loc = f" at {where}" if where is not None else ""
        super().__init__(f"{rule}{loc}: {message}")


class ResourceError(KmxError):
    """A configured cap (block size, time budget) was exceeded."""


class InternalError(KmxError):
    """An invariant the code relies on failed; indicates a bug, not bad input."""
