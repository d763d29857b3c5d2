"""Exception taxonomy shared across the package.

Validation errors (bad input) are kept distinct from honest refusals
(bounded searches that ran out of room, inputs outside the classified
range): the CLI maps the former to exit code 2 and the latter to 3.
"""

from __future__ import annotations


class AbmirrorError(Exception):
    """Base class for every package-specific error."""


class ValidationError(AbmirrorError, ValueError):
    """Input is malformed for the requested operation."""


class NotSymmetric(ValidationError):
    """Gram matrix is not symmetric."""


class NotEven(ValidationError):
    """Gram matrix has an odd diagonal entry."""


class Degenerate(ValidationError):
    """Gram matrix is singular."""


class WrongSignature(ValidationError):
    """Lattice signature is outside the operation's domain."""


class WrongRank(ValidationError):
    """Lattice rank is outside the operation's domain."""


class RefusalError(AbmirrorError):
    """Honest refusal: the answer was not determined, not a bad input."""


class Unclassifiable(RefusalError):
    """Finite quadratic form falls outside the two-generator catalogue."""


class SearchExhausted(RefusalError):
    """A bounded search ended without a witness."""


class CapExceeded(RefusalError):
    """A finite group is larger than the enumeration cap."""


class NoAntiAutomorphism(AbmirrorError):
    """The form provably admits no anti-automorphism."""
