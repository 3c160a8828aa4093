"""
Exception hierarchy shared by every app.

Checkers return reports and never raise; constructors that need a property
to hold raise one of these, carrying the failing report or witness.
"""
from typing import Any, Optional


class HopfDoubleError(Exception):
    """Base class for all errors raised by the project."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class FieldError(HopfDoubleError, ZeroDivisionError):
    """Division by zero in the ground field."""


class DimensionMismatch(HopfDoubleError):
    """Structure tensors or matrices of inconsistent sizes."""


class ParentMismatch(HopfDoubleError):
    """Elements of unrelated algebras were combined."""


class AxiomViolation(HopfDoubleError):
    """A Hopf algebra axiom failed; `report` holds the full axiom report."""

    def __init__(self, message: str, report: Any = None):
        witness = report.first_failure().witness if report is not None and report.first_failure() else None
        super().__init__(message, witness)
        self.report = report


class RepresentationError(HopfDoubleError):
    """A candidate double representation is not multiplicative."""


class BimoduleError(HopfDoubleError):
    """Bicovariant bimodule data fails one of its invariants."""


class ConsistencyError(HopfDoubleError):
    """Two independent formulations of the same object disagree."""


class CochainError(HopfDoubleError):
    """A cochain does not satisfy the precondition of an operation."""


class ParameterError(HopfDoubleError, ValueError):
    """A numeric parameter lies outside the admissible range."""


class SpecFileError(HopfDoubleError):
    """Malformed input file."""

    def __init__(self, message: str, location: Optional[str] = None):
        super().__init__(f"{location}: {message}" if location else message, location)
        self.location = location


class SizeGuardError(HopfDoubleError):
    """Input exceeds the configured size guard."""


class GroupError(HopfDoubleError):
    """A table or generator set does not define a group."""
