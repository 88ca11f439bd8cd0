"""Exception hierarchy shared across the package."""

from __future__ import annotations


class ExpPolyError(Exception):
    """Base class for all package errors."""


class ParseError(ExpPolyError):
    """Syntax error with byte position and the tokens that would have been accepted."""

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = expected
        detail = f"{message} at offset {position}"
        if expected:
            detail += " (expected " + ", ".join(sorted(expected)) + ")"
        super().__init__(detail)


class LoweringError(ExpPolyError):
    """AST is grammatically valid but cannot be turned into a symbolic object."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at offset {position}"
        super().__init__(message)


class DivisionError(ExpPolyError):
    """Exact division failed; carries the offending remainder as a witness."""

    def __init__(self, message: str, remainder=None):
        self.remainder = remainder
        super().__init__(message)


class MonomialInputError(ExpPolyError):
    """Operation undefined on a pure monomial (a unit of the Laurent ring)."""


class SeparationError(ExpPolyError):
    """Variable separation failed.

    ``kind`` is "precondition" when the discriminant is not a monomial in the
    chosen variable, or "no_valid_t" when the twist-exponent search was
    exhausted; in the latter case ``rejected`` lists every candidate tried.
    """

    def __init__(self, message: str, kind: str, rejected: tuple = ()):
        self.kind = kind
        self.rejected = rejected
        super().__init__(message)


class HypothesisFailure(ExpPolyError):
    """Input violates a hypothesis of the extraction procedure (reported, not a bug)."""


class NoPeelableVariable(ExpPolyError):
    """No variable has single-monomial discriminant shape; extraction cannot recurse."""

    def __init__(self, message: str, witnesses=None):
        self.witnesses = witnesses or {}
        super().__init__(message)


class RecompositionError(ExpPolyError):
    """Internal invariant violation: a transform did not reproduce its input exactly."""


class NumericError(ExpPolyError):
    """Base class for failures of the numerical engine."""


class BoundaryClearanceError(NumericError):
    """|f| could not be bounded away from zero on the circle after all nudges."""


class WindingError(NumericError):
    """A winding integral failed to certify an integer value at maximum precision."""


class PairingError(NumericError):
    """Zero enclosures of two functions could not be separated or matched."""
