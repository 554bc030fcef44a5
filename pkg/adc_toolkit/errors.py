"""
Exception hierarchy for the ADC toolkit.

Algebraic failures (d² ≠ 0, a broken antihomotopy identity, ...) are never
raised: they are collected as violations in a ValidationReport. Exceptions
are reserved for input that cannot be interpreted at all and for internal
disagreements between two computations of the same object.
"""

from typing import Optional


class AdcError(Exception):
    """Root of all errors raised by the toolkit."""


class AdcInputError(AdcError, ValueError):
    """Malformed input: unknown basis id, degree mismatch, schema violation."""

    def __init__(self, message: str, field_path: Optional[str] = None):
        self.field_path: Optional[str] = field_path
        self.detail = message
        if field_path:
            message = f"{field_path}: {message}"
        super().__init__(message)


class CapExceededError(AdcInputError):
    """A configured degree, truncation or search cap would be exceeded."""


class InternalConsistencyError(AdcError):
    """Two independent computations of the same object disagree."""
