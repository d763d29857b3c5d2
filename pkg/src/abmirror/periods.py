"""Period vectors of 2x4 period matrices via Pluecker coordinates.

The second wedge power of a rank-4 lattice is rank 6; with minors ordered
lexicographically as (12, 13, 14, 23, 24, 34) the wedge pairing of two
Pluecker vectors equals the determinant of the stacked 4x4 matrix:

    v . w = v12*w34 + v34*w12 - v13*w24 - v24*w13 + v14*w23 + v23*w14.

Every Pluecker vector is isotropic (v . v = 0, the Pluecker relation), and
a period matrix is admissible exactly when v . conj(v) > 0.  The pairing's
Gram matrix is the anti-diagonal (1, -1, 1, 1, -1, 1), an even form of
determinant -1 isometric to three hyperbolic planes; a concrete base
change to that block form is provided.

Two numeric backends: exact Gaussian-rational arithmetic (the default) and
floating-point complex arithmetic with a relative tolerance of 1e-9
against the squared vector scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import ValidationError
from .gaussian import GaussianRational

MINOR_INDEX_PAIRS: tuple[tuple[int, int], ...] = (
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 2),
    (1, 3),
    (2, 3),
)

#: Gram matrix of the wedge pairing in the lexicographic minor basis.
WEDGE_GRAM: tuple[tuple[int, ...], ...] = (
    (0, 0, 0, 0, 0, 1),
    (0, 0, 0, 0, -1, 0),
    (0, 0, 0, 1, 0, 0),
    (0, 0, 1, 0, 0, 0),
    (0, -1, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0),
)

FLOAT_RELATIVE_TOLERANCE = 1e-9


def wedge_to_three_planes() -> tuple[tuple[int, ...], ...]:
    """Columns of a base change C with C^T * WEDGE_GRAM * C equal to the
    direct sum of three hyperbolic planes: (e12, e34, e13, -e24, e14, e23).
    """
    cols = [
        (1, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 1),
        (0, 1, 0, 0, 0, 0),
        (0, 0, 0, 0, -1, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 1, 0, 0),
    ]
    return tuple(tuple(cols[j][i] for j in range(6)) for i in range(6))


def plucker(rows: Sequence[Sequence]) -> tuple:
    """The six 2x2 minors of a 2x4 matrix, lexicographic order.

    Generic in the coefficient arithmetic: works for Gaussian rationals
    and for Python complex numbers alike.
    """
    if len(rows) != 2 or any(len(r) != 4 for r in rows):
        raise ValidationError("period matrix must be 2 x 4")
    top, bot = rows
    return tuple(
        top[i] * bot[j] - top[j] * bot[i] for i, j in MINOR_INDEX_PAIRS
    )


def wedge_pairing(v: Sequence, w: Sequence):
    """Wedge pairing in the lexicographic minor basis; equals the
    determinant of the stacked 4x4 matrix of the two source matrices."""
    return (
        v[0] * w[5]
        + v[5] * w[0]
        - v[1] * w[4]
        - v[4] * w[1]
        + v[2] * w[3]
        + v[3] * w[2]
    )


Entry = Union[int, "GaussianRational", complex]


def _coerce_exact(entry) -> GaussianRational:
    if isinstance(entry, GaussianRational):
        return entry
    try:
        return GaussianRational.of(entry)
    except (TypeError, ValueError) as exc:
        raise ValidationError(
            f"exact mode needs Gaussian-rational entries, got {entry!r}"
        ) from exc


@dataclass(frozen=True)
class PeriodReport:
    """Outcome of the admissibility analysis of one period matrix."""

    mode: str
    vector: tuple
    isotropy_residual: Union[GaussianRational, complex]
    conjugate_pairing: Union[GaussianRational, complex]
    admissible: bool


def _analyze_exact(rows: Sequence[Sequence[GaussianRational]]) -> PeriodReport:
    vector = plucker(rows)
    if all(not c for c in vector):
        raise ValidationError("period matrix rows are linearly dependent")
    residual = wedge_pairing(vector, vector)
    if residual:
        raise AssertionError("Pluecker relation failed in exact arithmetic")
    conj = tuple(c.conjugate() for c in vector)
    pairing_value = wedge_pairing(vector, conj)
    if not pairing_value.is_real():
        raise AssertionError("conjugate pairing must be real")
    return PeriodReport(
        mode="exact",
        vector=vector,
        isotropy_residual=residual,
        conjugate_pairing=pairing_value,
        admissible=pairing_value.re > 0,
    )


def _analyze_float(rows: Sequence[Sequence[complex]]) -> PeriodReport:
    vector = plucker(rows)
    scale = sum(abs(c) ** 2 for c in vector)
    if scale == 0.0:
        raise ValidationError("period matrix rows are linearly dependent")
    tol = FLOAT_RELATIVE_TOLERANCE * max(scale, 1.0)
    residual = wedge_pairing(vector, vector)
    if abs(residual) > tol:
        raise AssertionError(
            f"Pluecker residual {abs(residual):.3e} exceeds tolerance {tol:.3e}"
        )
    conj = tuple(c.conjugate() for c in vector)
    pairing_value = wedge_pairing(vector, conj)
    if abs(pairing_value.imag) > tol:
        raise AssertionError("conjugate pairing has a non-real part")
    return PeriodReport(
        mode="float",
        vector=vector,
        isotropy_residual=residual,
        conjugate_pairing=pairing_value,
        admissible=pairing_value.real > tol,
    )


def analyze_period(
    rows: Sequence[Sequence[Entry]], mode: str = "exact"
) -> PeriodReport:
    """Admissibility report for one 2x4 period matrix.

    ``mode="exact"`` coerces every entry to a Gaussian rational and checks
    the Pluecker relation exactly; ``mode="float"`` runs in complex floats
    with the relative tolerance :data:`FLOAT_RELATIVE_TOLERANCE`.
    """
    if len(rows) != 2 or any(len(r) != 4 for r in rows):
        raise ValidationError("period matrix must be 2 x 4")
    if mode == "exact":
        exact_rows = [[_coerce_exact(e) for e in row] for row in rows]
        return _analyze_exact(exact_rows)
    if mode == "float":
        float_rows = [[complex(_as_complex(e)) for e in row] for row in rows]
        return _analyze_float(float_rows)
    raise ValidationError(f"unknown numeric mode: {mode!r}")


def _as_complex(entry) -> complex:
    if isinstance(entry, GaussianRational):
        return complex(float(entry.re), float(entry.im))
    return complex(entry)
