"""Extended numerical lattice and the volume / inverse-class involution.

A numerical class is a triple (rank, divisor, chi) paired by

    (r, D, s) . (r', D', s')  =  D.D' - r*s' - s*r',

which is the intersection form of the Neron-Severi part extended by a
rank-two block [[0, -1], [-1, 0]] in the (rank, chi) coordinates.

A complexified Kahler class is omega = B + i*kappa with kappa of positive
norm in the distinguished cone component.  Its volume is -omega^2/2, a
nonzero Gaussian rational (kappa^2 > 0 forces any omega with vanishing
volume into a negative-definite subspace, which is impossible), and the
mirror involution sends omega to omega / volume(omega).  The duality
matrix on coordinates (D..., r, s) swaps and negates the last two, fixing
the divisor part; on exponentials it satisfies

    dual(exp(omega)) = volume(omega) * exp(omega / volume(omega))

exactly, which the tests pin down.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import SearchExhausted, ValidationError
from .gaussian import GaussianRational
from .kernels.pure import iter_box
from .lattices import GramLattice, make_lattice, pairing, signature

Scalar = Union[int, Fraction, GaussianRational]


def _coerce(value: Scalar) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    return GaussianRational.of(value)


def _coerce_vector(values: Sequence[Scalar]) -> tuple[GaussianRational, ...]:
    return tuple(_coerce(v) for v in values)


def pairing_complex(
    lattice: GramLattice,
    v: Sequence[GaussianRational],
    w: Sequence[GaussianRational],
) -> GaussianRational:
    """Bilinear extension of the lattice pairing to Gaussian coefficients."""
    total = GaussianRational.of(0)
    for i, row in enumerate(lattice.gram):
        for j, entry in enumerate(row):
            if entry:
                total = total + v[i] * w[j] * entry
    return total


@dataclass(frozen=True)
class MukaiVector:
    """A numerical class (rank, divisor, chi) with Gaussian coefficients."""

    rank: GaussianRational
    divisor: tuple[GaussianRational, ...]
    chi: GaussianRational

    @staticmethod
    def of(
        rank: Scalar, divisor: Sequence[Scalar], chi: Scalar
    ) -> "MukaiVector":
        return MukaiVector(
            _coerce(rank), _coerce_vector(divisor), _coerce(chi)
        )

    def scaled(self, factor: GaussianRational) -> "MukaiVector":
        return MukaiVector(
            self.rank * factor,
            tuple(c * factor for c in self.divisor),
            self.chi * factor,
        )


def mukai_pairing(
    lattice: GramLattice, v: MukaiVector, w: MukaiVector
) -> GaussianRational:
    """(r, D, s) . (r', D', s') = D.D' - r*s' - s*r'."""
    return (
        pairing_complex(lattice, v.divisor, w.divisor)
        - v.rank * w.chi
        - v.chi * w.rank
    )


def numerical_lattice(lattice: GramLattice) -> GramLattice:
    """The Neron-Severi Gram extended by [[0,-1],[-1,0]] in (rank, chi)."""
    n = lattice.rank
    gram = [[0] * (n + 2) for _ in range(n + 2)]
    for i in range(n):
        for j in range(n):
            gram[i][j] = lattice.gram[i][j]
    gram[n][n + 1] = -1
    gram[n + 1][n] = -1
    return make_lattice(gram)


def to_coordinates(v: MukaiVector) -> tuple[GaussianRational, ...]:
    """Coordinates (D..., r, s) matching :func:`numerical_lattice`."""
    return v.divisor + (v.rank, v.chi)


def from_coordinates(coords: Sequence[GaussianRational]) -> MukaiVector:
    if len(coords) < 2:
        raise ValidationError("need at least the (rank, chi) coordinates")
    return MukaiVector(coords[-2], tuple(coords[:-2]), coords[-1])


def dual_isometry(lattice: GramLattice) -> tuple[tuple[int, ...], ...]:
    """Involution of the extended lattice: identity on the divisor part,
    (r, s) -> (-s, -r) on the last two coordinates.  Determinant -1."""
    n = lattice.rank
    rows = [[1 if i == j else 0 for j in range(n + 2)] for i in range(n)]
    rows.append([0] * n + [0, -1])
    rows.append([0] * n + [-1, 0])
    return tuple(tuple(r) for r in rows)


def apply_isometry(
    matrix: Sequence[Sequence[int]], coords: Sequence[GaussianRational]
) -> tuple[GaussianRational, ...]:
    return tuple(
        sum(
            (c * m for m, c in zip(row, coords) if m),
            GaussianRational.of(0),
        )
        for row in matrix
    )


def default_positive_vector(lattice: GramLattice) -> tuple[int, ...]:
    """Canonical reference vector of positive norm: the first standard
    basis vector that works, otherwise the first hit of the canonical box
    enumeration with doubling bounds."""
    n = lattice.rank
    for i in range(n):
        if lattice.gram[i][i] > 0:
            return tuple(1 if j == i else 0 for j in range(n))
    bound = 1
    while bound <= 32:
        for vec in iter_box(n, bound):
            value = pairing(lattice, vec, vec)
            if value > 0:
                return vec
        bound *= 2
    raise SearchExhausted("no positive-norm reference vector found")


@dataclass(frozen=True)
class ComplexifiedKahlerClass:
    """omega = b_field + i*kahler with kahler in the positive cone
    component singled out by ``reference``."""

    lattice: GramLattice
    b_field: tuple[Fraction, ...]
    kahler: tuple[Fraction, ...]
    reference: tuple[int, ...]

    def coefficients(self) -> tuple[GaussianRational, ...]:
        return tuple(
            GaussianRational(b, k) for b, k in zip(self.b_field, self.kahler)
        )


def _rational_vector(values: Sequence[Scalar], n: int) -> tuple[Fraction, ...]:
    if len(values) != n:
        raise ValidationError(f"expected {n} coefficients, got {len(values)}")
    out = []
    for v in values:
        if isinstance(v, GaussianRational):
            if not v.is_real():
                raise ValidationError("coefficients must be real rationals")
            out.append(v.re)
        elif isinstance(v, (int, Fraction)):
            out.append(Fraction(v))
        else:
            raise ValidationError(f"not a rational coefficient: {v!r}")
    return tuple(out)


def _rational_norm(
    lattice: GramLattice, v: Sequence[Fraction]
) -> Fraction:
    total = Fraction(0)
    for i, row in enumerate(lattice.gram):
        for j, entry in enumerate(row):
            if entry:
                total += v[i] * entry * v[j]
    return total


def _rational_pairing_int(
    lattice: GramLattice, v: Sequence[Fraction], w: Sequence[int]
) -> Fraction:
    total = Fraction(0)
    for i, row in enumerate(lattice.gram):
        for j, entry in enumerate(row):
            if entry:
                total += v[i] * entry * w[j]
    return total


def make_kahler_class(
    lattice: GramLattice,
    b_field: Sequence[Scalar],
    kahler: Sequence[Scalar],
    reference: Optional[Sequence[int]] = None,
) -> ComplexifiedKahlerClass:
    """Validated constructor: kahler^2 > 0, the reference has positive
    norm, and kahler lies in the reference's cone component."""
    plus, _minus = signature(lattice)
    if plus != 1:
        raise ValidationError(
            "complexified Kahler classes need signature (1, rank-1)"
        )
    n = lattice.rank
    b_vec = _rational_vector(b_field, n)
    k_vec = _rational_vector(kahler, n)
    if reference is None:
        ref = default_positive_vector(lattice)
    else:
        ref = tuple(int(r) for r in reference)
        if len(ref) != n:
            raise ValidationError(f"reference must have {n} coordinates")
    ref_norm = pairing(lattice, ref, ref)
    if ref_norm <= 0:
        raise ValidationError("reference vector must have positive norm")
    if _rational_norm(lattice, k_vec) <= 0:
        raise ValidationError("kahler part must have positive norm")
    if _rational_pairing_int(lattice, k_vec, ref) <= 0:
        raise ValidationError(
            "kahler part lies outside the reference cone component"
        )
    return ComplexifiedKahlerClass(lattice, b_vec, k_vec, ref)


def volume(omega: ComplexifiedKahlerClass) -> GaussianRational:
    """-omega^2 / 2; never zero on a valid class."""
    coeffs = omega.coefficients()
    square = pairing_complex(omega.lattice, coeffs, coeffs)
    vol = -square / GaussianRational.of(2)
    if not vol:
        raise AssertionError("volume vanished on a validated Kahler class")
    return vol


def inverse_kahler_class(
    omega: ComplexifiedKahlerClass,
) -> ComplexifiedKahlerClass:
    """The involution omega -> omega / volume(omega), revalidated."""
    vol = volume(omega)
    coeffs = tuple(c / vol for c in omega.coefficients())
    return make_kahler_class(
        omega.lattice,
        tuple(c.re for c in coeffs),
        tuple(c.im for c in coeffs),
        omega.reference,
    )


def mukai_exponential(omega: ComplexifiedKahlerClass) -> MukaiVector:
    """exp(omega) = (1, omega, omega^2/2)."""
    coeffs = omega.coefficients()
    square = pairing_complex(omega.lattice, coeffs, coeffs)
    return MukaiVector(
        GaussianRational.of(1),
        coeffs,
        square / GaussianRational.of(2),
    )
