"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class NumerositasError(Exception):
    """Base class for domain errors (CLI exit code 2 unless overridden)."""


class ParseError(NumerositasError, SyntaxError):
    """Raised by the expression parsers.

    ``position`` is 1-based; ``expected`` is the set of tokens that would
    have been accepted at that position.
    """

    def __init__(self, message: str, position: int, expected=()):
        self.position = position
        self.expected = frozenset(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += "; expected one of: " + ", ".join(sorted(self.expected))
        super().__init__(detail)
        self.msg = detail

    def __str__(self) -> str:
        return self.msg


class IllFormed(NumerositasError, ValueError):
    """A syntactically valid expression violating a well-formedness rule."""


class Unsupported(NumerositasError):
    """The expression lies outside the family handled exactly."""


class EmptyTarget(Unsupported):
    """``ffin(X, E)`` with an empty target set E."""


class ComplexityExceeded(NumerositasError):
    """Brute-force enumeration or exact evaluation would exceed the bound."""


class DivisionByZero(NumerositasError, ZeroDivisionError):
    pass


class BetaNotEvaluable(NumerositasError):
    """The value involves the real-interval unit, which has no finite model."""


class ExponentNotIntegralAtLevel(NumerositasError):
    """A fractional exponent of the counting unit is not integral at the level."""


class ExponentNotFinite(NumerositasError):
    """Ordinal embedding requested above omega^omega."""


class ArgumentNotBelowThetaJPlus1(NumerositasError):
    pass


class ResultAboveEpsilon0(NumerositasError):
    """Reserved: ordinal results are closed below epsilon_0, so this is never raised."""
