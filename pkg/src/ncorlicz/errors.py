"""Semantic exception hierarchy.

Every failure mode callers are expected to branch on has its own class;
plain ValueError/RuntimeError is never raised from public functions.
"""

from __future__ import annotations


class NcorliczError(Exception):
    """Base class for all toolkit errors."""


class DomainError(NcorliczError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class StructuralError(NcorliczError, ValueError):
    """Block shapes, dimensions, or bookkeeping of inputs are inconsistent."""


class InvalidOrliczError(NcorliczError, ValueError):
    """A constructed gauge violates the Orlicz-function axioms."""


class NumericError(NcorliczError, RuntimeError):
    """A numeric routine failed to reach its target accuracy."""

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class NotMeasurableError(NcorliczError, ArithmeticError):
    """Functional calculus hit an infinite spectral value.

    The operator the caller asked for does not exist as a (finite) element;
    norm routines treat this as a modular value of +inf.
    """

    def __init__(self, message: str, eigenvalue: float | None = None,
                 block: int | None = None):
        super().__init__(message)
        self.eigenvalue = eigenvalue
        self.block = block


class UnboundedNormError(NcorliczError, ArithmeticError):
    """No finite scaling brings the modular below one: element outside the space."""


class SpecError(NcorliczError, ValueError):
    """Malformed JSON input or configuration."""

    def __init__(self, message: str, location: str | None = None):
        if location:
            message = f"{message} (at {location})"
        super().__init__(message)
        self.location = location
