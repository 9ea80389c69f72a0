"""Exception taxonomy shared across the package.

Every failure mode that callers are expected to handle gets its own type;
plain ValueError/TypeError are reserved for programming errors (wrong shapes,
wrong argument types) that indicate a bug in the caller rather than a
mathematical refusal.
"""


class GhomalgError(Exception):
    """Base class for all package-specific errors."""


class PrimeTooSmall(GhomalgError):
    """The session prime does not exceed the dimension it must dominate."""


class NotAssociative(GhomalgError):
    """Structure constants fail the associativity identity."""


class NoUnit(GhomalgError):
    """The proposed unit vector fails the two-sided unit laws."""


class InfiniteDimensional(GhomalgError):
    """A bound quiver presentation does not truncate within the path cap."""


class BadRelation(GhomalgError):
    """A quiver relation term is not an admissible composable path."""


class AlgebraMismatch(GhomalgError):
    """Operands live over different algebras."""


class RandomnessExhausted(GhomalgError):
    """A Las Vegas search ran out of trial budget without an answer."""


class NotCertifiedGorenstein(GhomalgError):
    """A Gorenstein-only operation was invoked without a certificate."""


class DimCapExceeded(GhomalgError):
    """A closure or enumeration left the configured dimension cap."""


class ExceedsBound(GhomalgError):
    """A homological dimension exceeded the requested bound.

    Carries the bound so callers can report it; most callers treat this as
    a normal negative answer rather than an error.
    """

    def __init__(self, bound, message=None):
        self.bound = bound
        super().__init__(message or f"dimension exceeds bound {bound}")


class ProperityFailed(GhomalgError):
    """A claimed proper presentation failed its exactness re-check."""


class NotGproj(GhomalgError):
    """A complex term or presentation endpoint is not Gorenstein-projective."""


class UnsupportedShape(GhomalgError):
    """A hom computation was requested for an unsupported operand shape."""


class EmptyComplex(GhomalgError):
    """The endomorphism algebra of a null-homotopic complex has no unit."""


class ConeNotTwoTerm(GhomalgError):
    """Co-cone minimization failed to reach a two-term shape."""


class NotExact(GhomalgError):
    """A sequence claimed exact fails ordinary exactness."""


class UnknownCheck(GhomalgError):
    """An unrecognized check id was requested."""


class ParseError(GhomalgError):
    """An algebra spec file could not be parsed."""


class FixtureError(GhomalgError):
    """A named fixture is missing or malformed."""
