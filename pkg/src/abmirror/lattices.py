"""Even nondegenerate lattices presented by integer Gram matrices.

A lattice here is exactly its Gram matrix: symmetric, integer, even diagonal,
nonzero determinant.  All invariants (signature, determinant, Smith form) are
computed exactly; bounded vector searches share the canonical enumeration
order of :mod:`abmirror.kernels` so returned witnesses are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Optional, Sequence

from . import intmat, kernels
from .errors import Degenerate, NotEven, NotSymmetric, ValidationError


@dataclass(frozen=True)
class GramLattice:
    """Immutable even lattice; ``gram`` is a tuple-of-tuples of ints."""

    gram: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.gram)

    def __repr__(self) -> str:
        rows = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.gram)
        return f"GramLattice([{rows}])"


@dataclass(frozen=True)
class SmithDecomposition:
    """left @ gram @ right == diag(factors), with unimodular left/right."""

    left: tuple[tuple[int, ...], ...]
    factors: tuple[int, ...]
    right: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class IsotropyResult:
    """Outcome of an isotropic-vector search.

    ``kind`` is "yes" (witness attached), "no" (proven absent) or "unknown"
    (bounded search exhausted without a proof either way).
    """

    kind: str
    witness: Optional[tuple[int, ...]] = None
    bound: Optional[int] = None


def make_lattice(rows: Sequence[Sequence[int]]) -> GramLattice:
    """Validate and freeze a Gram matrix.

    Raises NotSymmetric / NotEven / Degenerate / ValidationError accordingly.
    """
    n = len(rows)
    if n == 0:
        raise ValidationError("empty Gram matrix")
    for row in rows:
        if len(row) != n:
            raise ValidationError("Gram matrix must be square")
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise ValidationError(f"Gram entries must be ints, got {x!r}")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric(f"entry ({i},{j}) != ({j},{i})")
    for i in range(n):
        if rows[i][i] % 2 != 0:
            raise NotEven(f"diagonal entry ({i},{i}) = {rows[i][i]} is odd")
    lattice = GramLattice(tuple(tuple(row) for row in rows))
    if determinant(lattice) == 0:
        raise Degenerate("Gram matrix is singular")
    return lattice


@lru_cache(maxsize=None)
def determinant(lattice: GramLattice) -> int:
    return intmat.det(lattice.gram)


@lru_cache(maxsize=None)
def signature(lattice: GramLattice) -> tuple[int, int]:
    """(n_plus, n_minus), exactly, by rational congruence diagonalization."""
    return intmat.signature_symmetric(lattice.gram)


@lru_cache(maxsize=None)
def smith_decomposition(lattice: GramLattice) -> SmithDecomposition:
    left, diag, right = intmat.smith_normal_form(lattice.gram)
    n = lattice.rank
    return SmithDecomposition(
        left=tuple(tuple(row) for row in left),
        factors=tuple(diag[i][i] for i in range(n)),
        right=tuple(tuple(row) for row in right),
    )


def norm(lattice: GramLattice, v: Sequence[int]) -> int:
    return pairing(lattice, v, v)


def pairing(lattice: GramLattice, v: Sequence[int], w: Sequence[int]) -> int:
    return sum(vi * s for vi, s in zip(v, intmat.mat_vec(lattice.gram, list(w))))


def direct_sum(*lattices: GramLattice) -> GramLattice:
    if not lattices:
        raise ValidationError("direct_sum needs at least one summand")
    total = sum(lat.rank for lat in lattices)
    out = [[0] * total for _ in range(total)]
    offset = 0
    for lat in lattices:
        for i in range(lat.rank):
            for j in range(lat.rank):
                out[offset + i][offset + j] = lat.gram[i][j]
        offset += lat.rank
    return make_lattice(out)


def rescale(lattice: GramLattice, n: int) -> GramLattice:
    """Same module, pairing multiplied by n (nonzero)."""
    if n == 0:
        raise ValidationError("rescale factor must be nonzero")
    return make_lattice([[n * x for x in row] for row in lattice.gram])


def hyperbolic_plane(n: int = 1) -> GramLattice:
    """Gram [[0, n], [n, 0]] (n nonzero); n = 1 is the unimodular plane."""
    if n == 0:
        raise ValidationError("hyperbolic scale must be nonzero")
    return make_lattice([[0, n], [n, 0]])


def rank_one(m: int) -> GramLattice:
    """Rank-1 lattice with generator of norm m (m even, nonzero)."""
    if m == 0 or m % 2 != 0:
        raise ValidationError("rank-one norm must be even and nonzero")
    return make_lattice([[m]])


def represents(
    lattice: GramLattice, target: int, bound: int
) -> Optional[tuple[int, ...]]:
    """First nonzero vector of norm ``target`` with coordinates in
    [-bound, bound] (canonical order), or None if the box has none."""
    if bound < 1:
        raise ValidationError("bound must be >= 1")
    return kernels.find_vector_with_norm(lattice.gram, target, bound)


def has_isotropic_vector(lattice: GramLattice, bound: int = 10) -> IsotropyResult:
    """Nonzero v with v.v = 0?  Exact (no bound) in rank <= 2; bounded box
    search with three-state outcome in higher rank."""
    n = lattice.rank
    if n == 1:
        return IsotropyResult(kind="no")
    if n == 2:
        # 2a x^2 + 2b xy + 2c y^2 = 0 solvable over Z iff b^2 - 4ac = -det
        # is a perfect square (negative means definite: no).
        a = lattice.gram[0][0] // 2
        b = lattice.gram[0][1]
        c = lattice.gram[1][1] // 2
        disc = b * b - 4 * a * c
        if disc < 0:
            return IsotropyResult(kind="no")
        root = isqrt(disc)
        if root * root != disc:
            return IsotropyResult(kind="no")
        if a == 0:
            witness = (1, 0)
        else:
            x, y = root - b, 2 * a
            g = gcd(x, y)
            witness = (x // g, y // g)
        assert norm(lattice, witness) == 0 and any(witness)
        return IsotropyResult(kind="yes", witness=witness)
    found = kernels.find_vector_with_norm(lattice.gram, 0, bound)
    if found is not None:
        return IsotropyResult(kind="yes", witness=found, bound=bound)
    return IsotropyResult(kind="unknown", bound=bound)


def is_simple(lattice: GramLattice, bound: int = 10) -> Optional[bool]:
    """No nonzero isotropic vector.  None when undecided (rank >= 3 only)."""
    result = has_isotropic_vector(lattice, bound)
    if result.kind == "yes":
        return False
    if result.kind == "no":
        return True
    return None
