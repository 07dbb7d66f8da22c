"""Exception hierarchy for the tautilt library."""


class TautiltError(Exception):
    """Base class for all library errors."""


class ParseError(TautiltError):
    """Malformed algebra presentation document."""


class InvalidRelation(ParseError):
    """Relation with non-parallel terms, a term of length < 2, or no nonzero coefficient."""


class NotAdmissible(TautiltError):
    """No nilpotency witness found: some path of maximal searched length does not reduce to 0."""


class NotProjective(TautiltError):
    """Operation requires a direct sum of indecomposable projectives."""


class DecompositionInconclusive(TautiltError):
    """Idempotent search exhausted its trial budget without certifying locality."""


class BrickTestInconclusive(TautiltError):
    """General brick test exhausted its budget without a certificate either way."""


class MutationVerificationFailed(TautiltError):
    """A mutation postcondition failed; signals an algorithmic bug, never silently returned."""


class NonIntegral(TautiltError):
    """An exact integer identity produced a non-integer entry; signals an upstream bug."""


class BrickVerificationFailed(TautiltError):
    """A brick candidate failed one of its certificate checks."""

    def __init__(self, message, pair_key=None, slot=None, dim_vector=None, check=None):
        super().__init__(message)
        self.pair_key = pair_key
        self.slot = slot
        self.dim_vector = dim_vector
        self.check = check


class CutoffReached(TautiltError):
    """Enumeration limits were hit before the question could be answered."""
