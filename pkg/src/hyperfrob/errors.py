"""Exception taxonomy for the whole package.

Every deliberate failure mode gets its own class so callers (and the CLI
exit-code mapping) can distinguish bad input from genuine math violations.
"""


class HyperfrobError(Exception):
    """Base class for all package errors."""


class BadPrime(HyperfrobError):
    """Prime is not good for the chosen root system (or not prime)."""


class IntegralityViolation(HyperfrobError):
    """A coefficient that must be an integer (divided-power basis) is not."""


class ExponentCapExceeded(HyperfrobError):
    """A divided-power exponent left the representable range [0, p^2 - 1]."""


class WrongAtomKind(HyperfrobError):
    """An atom code does not denote the expected kind (E / H / F)."""


class WrongTriangularPart(HyperfrobError):
    """Element lives outside the required triangular subalgebra."""


class NotTorusPart(HyperfrobError):
    """Expected a pure torus (H-only) element."""


class SideMismatch(HyperfrobError):
    """Mixed left/right or x/y objects where one side is required."""


class NoEquivariantGrading(HyperfrobError):
    """The degree-correction solver found no equivariant grading."""


class GradingMissing(HyperfrobError):
    """An operation requires a monomial-homogeneous grading that is absent."""


class SizeBound(HyperfrobError):
    """An enumeration would exceed the configured size bound."""


class ClosureFailure(HyperfrobError):
    """A supposedly closed computation produced terms outside its span."""


class NonUniqueForm(HyperfrobError):
    """The invariant-form solve did not return a 1-dimensional solution."""


class TruncationExceeded(HyperfrobError):
    """A product or action left the configured truncation window."""


class TruncationTooSmall(HyperfrobError):
    """The configured truncation window cannot hold the requested object."""


class LambdaMismatch(HyperfrobError):
    """Twist weights of operands disagree."""
