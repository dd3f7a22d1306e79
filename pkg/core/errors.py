"""
Error types shared by every module.

All domain errors derive from ValueError so callers that already guard
numeric input with ``except ValueError`` keep working.
"""

from typing import Optional, Sequence


class AlgebraError(ValueError):
    """Base class for malformed algebraic input."""


class BasisMismatchError(AlgebraError):
    """Two objects that must share a basis do not."""


class DegreeError(AlgebraError):
    """An operator or element has the wrong degree."""


class InhomogeneousError(AlgebraError):
    """A sign-sensitive call site received an inhomogeneous element."""


class SquareZeroError(AlgebraError):
    """An operation requiring Δ² = 0 received an operator that does not square to zero."""


class OrderError(AlgebraError):
    """The associative order is higher than an operation allows."""


class StasheffError(AlgebraError):
    """A structure that must satisfy the Stasheff identities does not."""


class TruncationError(AlgebraError):
    """A tensor computation exceeds the configured word-length bound."""


class ConventionError(AlgebraError):
    """No candidate sign convention is consistent with the computed data."""


class FrobeniusError(AlgebraError):
    """
    A Frobenius pairing fails one of its defining properties.

    Attributes:
        witness: Basis names of the offending tuple (empty for global failures)
    """

    def __init__(self, message: str, witness: Optional[Sequence[str]] = None):
        super().__init__(message)
        self.witness = tuple(witness or ())


class AlgebraFileError(AlgebraError):
    """
    Syntax or content error in an algebra definition file.

    Attributes:
        line: 1-based line number where the error was detected
    """

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
