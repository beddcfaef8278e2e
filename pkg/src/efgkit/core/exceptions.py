"""Exception hierarchy for efgkit."""

from __future__ import annotations

from typing import Any


class EfgkitError(Exception):
    """Base exception for all efgkit errors."""


class ToolError(EfgkitError):
    """Raised when a tool encounters an error during execution."""


class ValidationError(EfgkitError):
    """Raised when parameter validation or a precondition check fails."""


class InputFormatError(EfgkitError):
    """Raised when a document (FASTA, graph JSON, OV text, index file) cannot be parsed.

    Args:
        message: Human-readable description.
        line: 1-based line number of the offending input line, if known.
    """

    def __init__(self, message: str, *, line: int | None = None) -> None:
        """Initialise with an optional line number."""
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class GraphPropertyError(EfgkitError):
    """Raised when a graph is not (semi-)repeat-free where it must be.

    Args:
        message: Human-readable description.
        witness: The violating occurrence, if one was found.
    """

    def __init__(self, message: str, *, witness: Any = None) -> None:
        """Initialise with an optional witness."""
        super().__init__(message)
        self.witness = witness


class InfeasibleError(EfgkitError):
    """Raised when no valid segmentation exists and a fallback is not allowed."""


class VerificationError(EfgkitError):
    """Raised when a verifier finds a disagreement.

    Args:
        message: Human-readable description.
        witness: The counterexample, if any.
    """

    def __init__(self, message: str, *, witness: Any = None) -> None:
        """Initialise with an optional witness."""
        super().__init__(message)
        self.witness = witness


class PipelineError(EfgkitError):
    """Raised when a pipeline encounters an error."""


class StringStructureError(EfgkitError):
    """Raised when a string data structure is misused (e.g. overlapping interval insert)."""
