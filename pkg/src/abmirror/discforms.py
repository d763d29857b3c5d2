"""Finite quadratic forms on discriminant groups, exactly.

The discriminant group of an even lattice L is A = L*/L with the induced
Q/2Z-valued quadratic form q and Q/Z-valued bilinear form b.  This module
computes (A, q) from a Gram matrix, splits it into Sylow components,
classifies each two-generator component into one of six local shapes, and
decides/constructs anti-automorphisms (group automorphisms with
q(f(x)) = -q(x)) two independent ways:

* a catalogue criterion per local shape, with an explicit constructive map
  built by modular lifting (exact, verified before being returned);
* a brute-force per-prime backtracking search over images (capped), used as
  the cross-checking oracle and for isometry testing.

Conventions: generator orders ascend (d_1 | d_2 | ...); q-values live in
[0, 2) and pairing values in [0, 1); matrices act by columns, i.e. column j
of a map's matrix lists the coefficients of the image of generator j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Optional, Sequence

from . import intmat
from .errors import (
    CapExceeded,
    NoAntiAutomorphism,
    Unclassifiable,
    ValidationError,
)
from .lattices import GramLattice, smith_decomposition

# ---------------------------------------------------------------------------
# The form itself
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """Finite quadratic form on prod Z/d_i, ascending orders.

    ``q_gram[i][i]`` is q(g_i) in [0,2); ``q_gram[i][j]`` (i != j) is
    b(g_i, g_j) in [0,1).  The trivial form has no generators at all.
    """

    orders: tuple[int, ...]
    q_gram: tuple[tuple[Fraction, ...], ...]

    @property
    def ngens(self) -> int:
        return len(self.orders)

    def __repr__(self) -> str:
        return f"FiniteQuadraticForm(orders={self.orders})"


def make_form(
    orders: Sequence[int], q_gram: Sequence[Sequence[Fraction]]
) -> FiniteQuadraticForm:
    """Validate and canonically reduce a finite quadratic form."""
    n = len(orders)
    for d in orders:
        if not isinstance(d, int) or d < 2:
            raise ValidationError(f"generator orders must be ints >= 2, got {d!r}")
    for i in range(n - 1):
        if orders[i + 1] % orders[i] != 0:
            raise ValidationError("orders must form a divisibility chain")
    if len(q_gram) != n or any(len(row) != n for row in q_gram):
        raise ValidationError("q_gram shape must match the number of generators")
    reduced = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            entry = Fraction(q_gram[i][j])
            if q_gram[i][j] != q_gram[j][i]:
                raise ValidationError("q_gram must be symmetric")
            reduced[i][j] = entry % 2 if i == j else entry % 1
    for i in range(n):
        if (orders[i] * orders[i] * reduced[i][i]) % 2 != 0:
            raise ValidationError(
                f"q(g_{i}) = {reduced[i][i]} incompatible with order {orders[i]}"
            )
        for j in range(i + 1, n):
            if (min(orders[i], orders[j]) * reduced[i][j]).denominator != 1:
                raise ValidationError(
                    f"b(g_{i},g_{j}) = {reduced[i][j]} incompatible with orders"
                )
    return FiniteQuadraticForm(
        orders=tuple(orders),
        q_gram=tuple(tuple(row) for row in reduced),
    )


def discriminant_form(lattice: GramLattice) -> FiniteQuadraticForm:
    """(L*/L, q) from the Gram matrix, via Smith normal form.

    With U G V = D, the class of (1/d_i) V[:,i] generates the Z/d_i factor,
    so q and b are read off W = V^T G V:  q(g_i) = W_ii / d_i^2 mod 2,
    b(g_i, g_j) = W_ij / (d_i d_j) mod 1.
    """
    sd = smith_decomposition(lattice)
    v = [list(row) for row in sd.right]
    w = intmat.mat_mul(intmat.mat_mul(intmat.transpose(v), [list(r) for r in lattice.gram]), v)
    keep = [i for i, d in enumerate(sd.factors) if d > 1]
    orders = [sd.factors[i] for i in keep]
    q_gram = [
        [
            (
                Fraction(w[i][j], sd.factors[i] * sd.factors[j]) % 2
                if i == j
                else Fraction(w[i][j], sd.factors[i] * sd.factors[j]) % 1
            )
            for j in keep
        ]
        for i in keep
    ]
    return make_form(orders, q_gram)


def group_order(form: FiniteQuadraticForm) -> int:
    total = 1
    for d in form.orders:
        total *= d
    return total


def evaluate_q(form: FiniteQuadraticForm, coeffs: Sequence[int]) -> Fraction:
    """q(sum c_i g_i) in [0, 2)."""
    total = Fraction(0)
    n = form.ngens
    for i in range(n):
        ci = coeffs[i]
        if ci:
            total += ci * ci * form.q_gram[i][i]
            for j in range(i + 1, n):
                if coeffs[j]:
                    total += 2 * ci * coeffs[j] * form.q_gram[i][j]
    return total % 2


def bilinear_b(
    form: FiniteQuadraticForm, x: Sequence[int], y: Sequence[int]
) -> Fraction:
    """b(x, y) in [0, 1); b(g_i, g_i) == q(g_i) mod Z."""
    total = Fraction(0)
    n = form.ngens
    for i in range(n):
        if x[i]:
            for j in range(n):
                if y[j]:
                    entry = form.q_gram[i][j] % 1 if i == j else form.q_gram[i][j]
                    total += x[i] * y[j] * entry
    return total % 1


def negated(form: FiniteQuadraticForm) -> FiniteQuadraticForm:
    """The form with q replaced by -q (and b by -b)."""
    n = form.ngens
    q_gram = [
        [
            (-form.q_gram[i][j]) % 2 if i == j else (-form.q_gram[i][j]) % 1
            for j in range(n)
        ]
        for i in range(n)
    ]
    return FiniteQuadraticForm(form.orders, tuple(tuple(row) for row in q_gram))


def _reduce_coeffs(form: FiniteQuadraticForm, coeffs: Sequence[int]) -> tuple[int, ...]:
    return tuple(c % d for c, d in zip(coeffs, form.orders))


def all_elements(form: FiniteQuadraticForm) -> list[tuple[int, ...]]:
    """Every element as a coefficient tuple, ascending lexicographic order."""
    if form.ngens == 0:
        return [()]
    return [tup for tup in product(*(range(d) for d in form.orders))]


def element_order(form: FiniteQuadraticForm, coeffs: Sequence[int]) -> int:
    total = 1
    for c, d in zip(coeffs, form.orders):
        if c % d:
            g = gcd(c % d, d)
            total = total * (d // g) // gcd(total, d // g)
    return total


# ---------------------------------------------------------------------------
# Sylow decomposition
# ---------------------------------------------------------------------------


def _prime_factors(n: int) -> list[int]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out.append(m)
    return out


@dataclass(frozen=True)
class SylowPart:
    """One p-primary component, remembering how it sits in the parent.

    Generator t of the part is ``multipliers[t] * g_{indices[t]}`` in the
    parent form.
    """

    prime: int
    form: FiniteQuadraticForm
    indices: tuple[int, ...]
    multipliers: tuple[int, ...]


def sylow_parts(form: FiniteQuadraticForm) -> list[SylowPart]:
    """Orthogonal p-primary components, ascending primes."""
    if form.ngens == 0:
        return []
    primes = sorted({p for d in form.orders for p in _prime_factors(d)})
    parts = []
    for p in primes:
        indices = []
        multipliers = []
        p_orders = []
        for i, d in enumerate(form.orders):
            e = 0
            m = d
            while m % p == 0:
                m //= p
                e += 1
            if e > 0:
                indices.append(i)
                multipliers.append(m)  # d / p^e, kills every other prime
                p_orders.append(p**e)
        q_gram = []
        for a, i in enumerate(indices):
            row = []
            for b, j in enumerate(indices):
                entry = multipliers[a] * multipliers[b] * form.q_gram[i][j]
                row.append(entry % 2 if i == j else entry % 1)
            q_gram.append(row)
        parts.append(
            SylowPart(
                prime=p,
                form=make_form(p_orders, q_gram),
                indices=tuple(indices),
                multipliers=tuple(multipliers),
            )
        )
    return parts


def sylow_decompose(form: FiniteQuadraticForm) -> dict[int, FiniteQuadraticForm]:
    """{p: p-primary component}; the components are mutually orthogonal."""
    return {part.prime: part.form for part in sylow_parts(form)}


# ---------------------------------------------------------------------------
# Local classification (two-generator catalogue)
# ---------------------------------------------------------------------------

ODD_CYCLIC = "odd_cyclic"
ODD_DIAGONAL = "odd_diagonal"
TWO_CYCLIC = "two_cyclic"
TWO_DIAGONAL = "two_diagonal"
TWO_U = "two_u"
TWO_V = "two_v"


@dataclass(frozen=True)
class LocalBlock:
    """Canonical shape of a p-primary form with at most two generators.

    kind "odd_cyclic":   q(a g) = 2 theta a^2 / p^k on Z/p^k, p odd;
    kind "odd_diagonal": orthogonal sum of two odd cyclics, exponents k1<=k2;
    kind "two_cyclic":   q(a g) = theta a^2 / 2^k on Z/2^k, theta odd;
    kind "two_diagonal": orthogonal sum of two 2-adic cyclics;
    kind "two_u":        (Z/2^k)^2, q(a,b) = theta * a b / 2^(k-1);
    kind "two_v":        (Z/2^k)^2, q(a,b) = theta (a^2+ab+b^2) / 2^(k-1).

    units are the thetas, reduced to least positive residues mod p^k for odd
    p, mod 2^(k+1) for 2-adic cyclic/diagonal, mod 2^k for U/V.
    """

    kind: str
    prime: int
    exponents: tuple[int, ...]
    units: tuple[int, ...]

    def describe(self) -> str:
        ks = ",".join(str(k) for k in self.exponents)
        us = ",".join(str(u) for u in self.units)
        return f"{self.kind}(p={self.prime}, k=({ks}), theta=({us}))"


def _canonical_block_form(block: LocalBlock) -> FiniteQuadraticForm:
    """The model form a LocalBlock names (used to verify classification)."""
    p = block.prime
    if block.kind == ODD_CYCLIC:
        (k,), (t,) = block.exponents, block.units
        return make_form([p**k], [[Fraction(2 * t, p**k)]])
    if block.kind == ODD_DIAGONAL:
        (k1, k2), (t1, t2) = block.exponents, block.units
        return make_form(
            [p**k1, p**k2],
            [
                [Fraction(2 * t1, p**k1), Fraction(0)],
                [Fraction(0), Fraction(2 * t2, p**k2)],
            ],
        )
    if block.kind == TWO_CYCLIC:
        (k,), (t,) = block.exponents, block.units
        return make_form([2**k], [[Fraction(t, 2**k)]])
    if block.kind == TWO_DIAGONAL:
        (k1, k2), (t1, t2) = block.exponents, block.units
        return make_form(
            [2**k1, 2**k2],
            [
                [Fraction(t1, 2**k1), Fraction(0)],
                [Fraction(0), Fraction(t2, 2**k2)],
            ],
        )
    if block.kind == TWO_U:
        (k,), (t,) = block.exponents, block.units
        return make_form(
            [2**k, 2**k],
            [
                [Fraction(0), Fraction(t, 2**k)],
                [Fraction(t, 2**k), Fraction(0)],
            ],
        )
    if block.kind == TWO_V:
        (k,), (t,) = block.exponents, block.units
        return make_form(
            [2**k, 2**k],
            [
                [Fraction(2 * t, 2**k), Fraction(t, 2**k)],
                [Fraction(t, 2**k), Fraction(2 * t, 2**k)],
            ],
        )
    raise ValueError(f"unknown block kind {block.kind!r}")


def _exact_power_denominator(value: Fraction, p: int, k: int) -> bool:
    """True iff value (mod its natural window) has denominator exactly p^k."""
    return value.denominator == p**k


def _vp(n: int, p: int) -> int:
    e = 0
    while n % p == 0 and n != 0:
        n //= p
        e += 1
    return e


def _unit_of_odd_cyclic(q_val: Fraction, p: int, k: int) -> int:
    """theta with q = 2 theta / p^k mod 2, theta a unit mod p^k."""
    t = q_val * Fraction(p**k, 2)
    if t.denominator != 1:
        raise Unclassifiable(f"q-value {q_val} not of shape 2t/p^{k}")
    theta = int(t) % (p**k)
    if theta % p == 0:
        raise Unclassifiable("degenerate odd cyclic block")
    return theta


def _unit_of_two_cyclic(q_val: Fraction, k: int) -> int:
    """theta odd with q = theta / 2^k mod 2, reduced mod 2^(k+1)."""
    t = q_val * (2**k)
    if t.denominator != 1:
        raise Unclassifiable(f"q-value {q_val} not of shape t/2^{k}")
    theta = int(t) % (2 ** (k + 1))
    if theta % 2 == 0:
        raise Unclassifiable("degenerate 2-adic cyclic block")
    return theta


def classify_local(form: FiniteQuadraticForm) -> LocalBlock:
    """Classify a p-primary one- or two-generator form into the catalogue."""
    block, _, _ = _classify_with_transform(form)
    return block


def _classify_with_transform(
    form: FiniteQuadraticForm,
) -> tuple[LocalBlock, list[list[int]], list[list[int]]]:
    """Classify and return (block, C, Cinv) where canonical generator j is
    sum_i C[i][j] g_i and C @ Cinv == identity modulo generator orders."""
    n = form.ngens
    if n == 0:
        raise Unclassifiable("trivial form has no local block")
    primes = {p for d in form.orders for p in _prime_factors(d)}
    if len(primes) != 1:
        raise Unclassifiable("form is not p-primary")
    p = primes.pop()
    if n > 2:
        raise Unclassifiable(
            f"{n} invariant factors at p={p}: outside the two-generator catalogue"
        )
    ident = [[1, 0], [0, 1]]
    if n == 1:
        k = _vp(form.orders[0], p)
        if p == 2:
            theta = _unit_of_two_cyclic(form.q_gram[0][0], k)
            return (
                LocalBlock(TWO_CYCLIC, 2, (k,), (theta,)),
                [[1]],
                [[1]],
            )
        theta = _unit_of_odd_cyclic(form.q_gram[0][0], p, k)
        return (LocalBlock(ODD_CYCLIC, p, (k,), (theta,)), [[1]], [[1]])

    k1 = _vp(form.orders[0], p)
    k2 = _vp(form.orders[1], p)
    if p != 2:
        return _classify_odd_rank2(form, p, k1, k2)
    return _classify_two_rank2(form, k1, k2)


def _compose(c_old: list[list[int]], step: list[list[int]]) -> list[list[int]]:
    return intmat.mat_mul(c_old, step)


def _classify_odd_rank2(
    form: FiniteQuadraticForm, p: int, k1: int, k2: int
) -> tuple[LocalBlock, list[list[int]], list[list[int]]]:
    """Split an odd p-primary two-generator form into a diagonal pair.

    Strategy: arrange for the second generator to have a q-value with exact
    denominator p^k2 (a unit theta), then clear the cross pairing by
    g_1 -> g_1 - lambda g_2.
    """
    c = [[1, 0], [0, 1]]
    cinv = [[1, 0], [0, 1]]
    qa = form.q_gram[0][0]
    qb = form.q_gram[1][1]
    if not _exact_power_denominator(qb, p, k2):
        if k1 != k2:
            raise Unclassifiable("degenerate odd p-primary form")
        # equal orders: one of g_1, g_1 + g_2 must carry a unit q-value
        if _exact_power_denominator(qa, p, k1):
            c, cinv = [[0, 1], [1, 0]], [[0, 1], [1, 0]]
        else:
            q_sum = evaluate_q(form, (1, 1))
            if not _exact_power_denominator(q_sum, p, k2):
                raise Unclassifiable("degenerate odd p-primary form")
            # new generators (g_1, g_1 + g_2); det = 1
            c = [[1, 1], [0, 1]]
            cinv = [[1, -1], [0, 1]]

    def q_of(col: Sequence[int]) -> Fraction:
        return evaluate_q(form, col)

    def b_of(col1: Sequence[int], col2: Sequence[int]) -> Fraction:
        return bilinear_b(form, col1, col2)

    g1 = [c[0][0], c[1][0]]
    g2 = [c[0][1], c[1][1]]
    theta2 = _unit_of_odd_cyclic(q_of(g2), p, k2)
    cross = b_of(g1, g2)
    s = int(cross * p**k1)  # b(g1, g2) = s / p^k1
    lam = (s * p ** (k2 - k1) * pow(2 * theta2, -1, p**k2)) % (p**k2)
    step = [[1, 0], [-lam, 1]]
    step_inv = [[1, 0], [lam, 1]]
    c = _compose(c, step)
    cinv = _compose(step_inv, cinv)
    g1 = [c[0][0], c[1][0]]
    assert b_of(g1, g2) == 0
    theta1 = _unit_of_odd_cyclic(q_of(g1), p, k1)
    return (
        LocalBlock(ODD_DIAGONAL, p, (k1, k2), (theta1, theta2)),
        c,
        cinv,
    )


def _invert_mod(mat: list[list[int]], modulus: int) -> list[list[int]]:
    """Inverse of a 2x2 integer matrix with unit determinant mod modulus."""
    det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    det_inv = pow(det % modulus, -1, modulus)
    return [
        [(mat[1][1] * det_inv) % modulus, (-mat[0][1] * det_inv) % modulus],
        [(-mat[1][0] * det_inv) % modulus, (mat[0][0] * det_inv) % modulus],
    ]


def _classify_two_rank2(
    form: FiniteQuadraticForm, k1: int, k2: int
) -> tuple[LocalBlock, list[list[int]], list[list[int]]]:
    """Classify a 2-primary two-generator form: diagonal, U-shape or V-shape."""
    if k1 < k2:
        qb = form.q_gram[1][1]
        if not _exact_power_denominator(qb, 2, k2):
            raise Unclassifiable("degenerate 2-primary form")
        theta2 = _unit_of_two_cyclic(qb, k2)
        cross = bilinear_b(form, (1, 0), (0, 1))
        s = int(cross * 2**k1)
        lam = (s * 2 ** (k2 - k1) * pow(theta2, -1, 2**k2)) % (2**k2)
        c = [[1, 0], [-lam, 1]]
        cinv = [[1, 0], [lam, 1]]
        q1 = evaluate_q(form, (1, -lam))
        theta1 = _unit_of_two_cyclic(q1, k1)
        return (
            LocalBlock(TWO_DIAGONAL, 2, (k1, k2), (theta1, theta2)),
            c,
            cinv,
        )

    k = k1
    modulus = 2**k
    # Diagonal iff one of g_1, g_2, g_1 + g_2 has q with exact denominator
    # 2^k (if the form is diagonal in some basis, unit values survive on at
    # least one of these three; U/V forms have every q-denominator <= 2^(k-1)).
    for cand, partner, cands in (
        ((0, 1), (1, 0), "g2"),
        ((1, 0), (0, 1), "g1"),
        ((1, 1), (0, 1), "g1+g2"),
    ):
        q_val = evaluate_q(form, cand)
        if _exact_power_denominator(q_val, 2, k):
            c = [
                [partner[0], cand[0]],
                [partner[1], cand[1]],
            ]
            cinv = _invert_mod(c, modulus)
            theta2 = _unit_of_two_cyclic(q_val, k)
            cross = bilinear_b(form, partner, cand)
            s = int(cross * 2**k)
            lam = (s * pow(theta2, -1, modulus)) % modulus
            step = [[1, 0], [-lam, 1]]
            step_inv = [[1, 0], [lam, 1]]
            new_c = _compose(c, step)
            new_cinv = _compose(step_inv, cinv)
            g1 = (new_c[0][0], new_c[1][0])
            g2 = (new_c[0][1], new_c[1][1])
            assert bilinear_b(form, g1, g2) == 0
            theta1 = _unit_of_two_cyclic(evaluate_q(form, g1), k)
            return (
                LocalBlock(TWO_DIAGONAL, 2, (k, k), (theta1, theta2)),
                new_c,
                new_cinv,
            )

    # U versus V: U has an isotropic element of full order, V has none
    # (a^2 + ab + b^2 is odd whenever a or b is odd).
    full_order = [
        tup
        for tup in product(range(modulus), repeat=2)
        if tup[0] % 2 == 1 or tup[1] % 2 == 1
    ]
    iso = next(
        (tup for tup in full_order if evaluate_q(form, tup) == 0), None
    )
    if iso is not None:
        for partner in full_order:
            if evaluate_q(form, partner) != 0:
                continue
            cross = bilinear_b(form, iso, partner)
            num = cross * modulus
            if num.denominator != 1 or int(num) % 2 != 1:
                continue
            det = iso[0] * partner[1] - iso[1] * partner[0]
            if det % 2 == 0:
                continue
            theta = int(num) % modulus
            c = [[iso[0], partner[0]], [iso[1], partner[1]]]
            cinv = _invert_mod(c, modulus)
            return (LocalBlock(TWO_U, 2, (k,), (theta,)), c, cinv)
        raise Unclassifiable("isotropic 2-adic block without hyperbolic partner")
    # V: any full-order element has q = 2 theta / 2^k with theta odd; a
    # partner with equal q-value and matching cross pairing forms a basis.
    first = full_order[0]
    q_first = evaluate_q(form, first)
    num = q_first * 2 ** (k - 1)
    if num.denominator != 1 or int(num) % 2 != 1:
        raise Unclassifiable("2-primary block is neither diagonal, U nor V")
    theta = int(num) % modulus
    target_cross = Fraction(theta, modulus) % 1
    for partner in full_order:
        if partner == first:
            continue
        if evaluate_q(form, partner) != q_first:
            continue
        if bilinear_b(form, first, partner) != target_cross:
            continue
        c = [[first[0], partner[0]], [first[1], partner[1]]]
        det = c[0][0] * c[1][1] - c[0][1] * c[1][0]
        if det % 2 == 0:
            continue
        cinv = _invert_mod(c, modulus)
        return (LocalBlock(TWO_V, 2, (k,), (theta,)), c, cinv)
    raise Unclassifiable("2-primary block is neither diagonal, U nor V")


# ---------------------------------------------------------------------------
# Existence criterion per shape
# ---------------------------------------------------------------------------


def block_admits_anti_automorphism(block: LocalBlock) -> bool:
    """Shape-level criterion for an automorphism with q(f(x)) = -q(x)."""
    p = block.prime
    if block.kind == ODD_CYCLIC:
        return p % 4 == 1
    if block.kind == ODD_DIAGONAL:
        k1, k2 = block.exponents
        return p % 4 == 1 or k1 == k2
    if block.kind == TWO_CYCLIC:
        return False
    if block.kind == TWO_DIAGONAL:
        k1, k2 = block.exponents
        t1, t2 = block.units
        return abs(k1 - k2) <= 1 and (t1 + t2) % 4 == 0
    if block.kind in (TWO_U, TWO_V):
        return True
    raise ValueError(f"unknown block kind {block.kind!r}")


def has_anti_automorphism(form: FiniteQuadraticForm) -> bool:
    """Every Sylow component admits one (trivially true for the trivial form).

    Decided entirely by the local catalogue; raises Unclassifiable when a
    component has more than two invariant factors.
    """
    for part in sylow_parts(form):
        block = classify_local(part.form)
        if not block_admits_anti_automorphism(block):
            return False
    return True


# ---------------------------------------------------------------------------
# Morphism container and validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AntiAutomorphism:
    """A verified anti-automorphism; column j is the image of generator j."""

    form: FiniteQuadraticForm
    matrix: tuple[tuple[int, ...], ...]


def _is_group_endomorphism(
    form: FiniteQuadraticForm, matrix: Sequence[Sequence[int]]
) -> bool:
    n = form.ngens
    for j in range(n):
        for t in range(n):
            if (form.orders[j] * matrix[t][j]) % form.orders[t] != 0:
                return False
    return True


def _is_bijective(form: FiniteQuadraticForm, matrix: Sequence[Sequence[int]]) -> bool:
    """Images generate the whole group: [F | diag(d)] has all factors 1."""
    n = form.ngens
    if n == 0:
        return True
    wide = [
        [matrix[i][j] for j in range(n)]
        + [form.orders[i] if i == j else 0 for j in range(n)]
        for i in range(n)
    ]
    return all(f == 1 for f in intmat.invariant_factors(wide))


def _matrix_column(matrix: Sequence[Sequence[int]], j: int) -> tuple[int, ...]:
    return tuple(row[j] for row in matrix)


def _respects_q(
    source: FiniteQuadraticForm,
    target: FiniteQuadraticForm,
    matrix: Sequence[Sequence[int]],
    sign: int,
) -> bool:
    """q_target(f(g_j)) == sign * q_source(g_j) and likewise for b."""
    n = source.ngens
    for j in range(n):
        col = _matrix_column(matrix, j)
        if evaluate_q(target, col) != (sign * source.q_gram[j][j]) % 2:
            return False
    for i in range(n):
        for j in range(i + 1, n):
            ci = _matrix_column(matrix, i)
            cj = _matrix_column(matrix, j)
            if bilinear_b(target, ci, cj) != (sign * source.q_gram[i][j]) % 1:
                return False
    return True


def is_anti_automorphism(
    form: FiniteQuadraticForm, matrix: Sequence[Sequence[int]]
) -> bool:
    n = form.ngens
    if len(matrix) != n or any(len(row) != n for row in matrix):
        return False
    return (
        _is_group_endomorphism(form, matrix)
        and _is_bijective(form, matrix)
        and _respects_q(form, form, matrix, -1)
    )


def anti_automorphism(
    form: FiniteQuadraticForm, matrix: Sequence[Sequence[int]]
) -> AntiAutomorphism:
    """Validate and freeze; entries of row t are reduced mod order of g_t."""
    n = form.ngens
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValidationError("matrix shape must match the number of generators")
    reduced = [
        [matrix[t][j] % form.orders[t] for j in range(n)] for t in range(n)
    ]
    if not _is_group_endomorphism(form, reduced):
        raise ValidationError("matrix does not define a group endomorphism")
    if not _is_bijective(form, reduced):
        raise ValidationError("matrix is not bijective on the group")
    if not _respects_q(form, form, reduced, -1):
        raise ValidationError("matrix does not negate the quadratic form")
    return AntiAutomorphism(form, tuple(tuple(row) for row in reduced))


# ---------------------------------------------------------------------------
# Constructive route (catalogue + modular lifting)
# ---------------------------------------------------------------------------


def _sqrt_minus_one(p: int, k: int) -> int:
    """u with u^2 = -1 mod p^k, p = 1 mod 4; smallest of the pair u, p^k - u."""
    nonresidue = next(
        n for n in range(2, p) if pow(n, (p - 1) // 2, p) == p - 1
    )
    u = pow(nonresidue, (p - 1) // 4, p)
    modulus = p
    for _ in range(k - 1):
        modulus *= p
        # Newton step for u^2 + 1 = 0
        u = (u - (u * u + 1) * pow(2 * u, -1, modulus)) % modulus
    assert (u * u + 1) % (p**k) == 0
    return min(u, p**k - u)


def _construct_odd_cyclic(block: LocalBlock) -> list[list[int]]:
    p = block.prime
    (k,) = block.exponents
    return [[_sqrt_minus_one(p, k)]]


def _construct_odd_diagonal_split(block: LocalBlock) -> list[list[int]]:
    """p = 1 mod 4: multiply both generators by a square root of -1."""
    p = block.prime
    k1, k2 = block.exponents
    u = _sqrt_minus_one(p, k2)
    return [[u % (p**k1), 0], [0, u]]


def _construct_odd_diagonal_equal(block: LocalBlock) -> list[list[int]]:
    """p = 3 mod 4, k1 == k2 == k: base solution mod p lifted to mod p^k.

    Writes f(g1) = (u11, u12), f(g2) = (u21, u22) and maintains
      (i)   p^j | (u11^2 + 1) t1 + u12^2 t2
      (ii)  p^j | u21^2 t1 + (u22^2 + 1) t2
      (iii) p^j | u11 u21 t1 + u12 u22 t2
    while raising j; corrections solve a linear system mod p whose
    determinant is a unit because m^2 + n^2 t1 t2 = -1 mod p.
    """
    p = block.prime
    (k, _), (t1, t2) = block.exponents, block.units
    m = n = None
    for n_try in range(1, p):
        rhs = (-1 - n_try * n_try * t1 * t2) % p
        if rhs == 0:
            m, n = 0, n_try
            break
        if pow(rhs, (p - 1) // 2, p) == 1:
            root = pow(rhs, (p + 1) // 4, p)  # p = 3 mod 4 shortcut
            m, n = min(root, p - root), n_try
            break
    assert m is not None and n is not None and n % p != 0
    u11, u12, u21, u22 = m % p, (n * t1) % p, (-n * t2) % p, m % p

    def residuals(level_mod: int) -> tuple[int, int, int]:
        r1 = ((u11 * u11 + 1) * t1 + u12 * u12 * t2) % level_mod
        r2 = (u21 * u21 * t1 + (u22 * u22 + 1) * t2) % level_mod
        r3 = (u11 * u21 * t1 + u12 * u22 * t2) % level_mod
        return r1, r2, r3

    pj = p
    for _ in range(k - 1):
        next_mod = pj * p
        r1, r2, r3 = residuals(next_mod)
        assert r1 % pj == 0 and r2 % pj == 0 and r3 % pj == 0
        inv2 = pow(2, -1, p)
        g1 = (-(r1 // pj) * inv2) % p
        g2 = (-(r2 // pj) * inv2) % p
        g3 = (-(r3 // pj)) % p
        # Solve  m t1 a + n t1 t2 b            = g1
        #                       - n t1 t2 c    = g2
        #        -n t2 t1 a + m t2 b + m t1 c  = g3     (all mod p)
        c_corr = (-g2 * pow(n * t1 * t2, -1, p)) % p
        g3p = (g3 - m * t1 * c_corr) % p
        det = (m * m * t1 * t2 + n * n * t1 * t1 * t2 * t2) % p
        det_inv = pow(det, -1, p)
        a_corr = ((g1 * (m * t2) - g3p * (n * t1 * t2)) * det_inv) % p
        b_corr = ((g3p * (m * t1) + g1 * (n * t1 * t2)) * det_inv) % p
        u11 = (u11 + pj * a_corr) % next_mod
        u12 = (u12 + pj * b_corr) % next_mod
        u21 = (u21 + pj * c_corr) % next_mod
        pj = next_mod
    r1, r2, r3 = residuals(p**k)
    assert r1 == 0 and r2 == 0 and r3 == 0
    return [[u11, u21], [u12, u22]]


def _construct_two_diagonal_equal(block: LocalBlock) -> list[list[int]]:
    """k1 == k2 == k, theta1 + theta2 = 0 mod 4; lift from the k <= 2 bases."""
    (k, _), (t1, t2) = block.exponents, block.units
    if k == 1:
        u11, u12, u21, u22 = 0, 1, 1, 0
    else:
        eps = 0 if (t1 + t2) % 8 == 0 else 2
        u11, u12, u21, u22 = eps, 1, 1, eps
    level = min(k, 2)
    for j in range(level, k):
        two_j = 2**j
        r1 = (u11 * u11 + 1) * t1 + u12 * u12 * t2
        r2 = u21 * u21 * t1 + (u22 * u22 + 1) * t2
        r3 = u11 * u21 * t1 + u12 * u22 * t2
        assert r1 % (2 * two_j) == 0 and r2 % (2 * two_j) == 0 and r3 % two_j == 0
        b_corr = (r1 // (2 * two_j)) % 2
        c_corr = (r2 // (2 * two_j)) % 2
        a_corr = (r3 // two_j) % 2
        u11 += two_j * a_corr
        u12 += two_j * b_corr
        u21 += two_j * c_corr
    modulus = 2**k
    return [[u11 % modulus, u21 % modulus], [u12 % modulus, u22 % modulus]]


def _construct_two_diagonal_step(block: LocalBlock) -> list[list[int]]:
    """k2 == k1 + 1, theta1 + theta2 = 0 mod 4; image coefficients keep
    u11, t12, u21, u22 odd where f(g1) = (u11, 2 t12)."""
    (k, _), (t1, t2) = block.exponents, block.units
    if k == 1:
        u11, t12, u21, u22 = 1, 1, 1, 1
    else:
        u11, t12, u21 = 1, 1, 1
        u22 = 1 if (t1 + t2) % 8 == 0 else 5
    level = min(k, 2)
    for j in range(level, k):
        two_j = 2**j
        r1 = (u11 * u11 + 1) * t1 + 2 * t12 * t12 * t2
        r2 = 2 * u21 * u21 * t1 + (u22 * u22 + 1) * t2
        r3 = u11 * u21 * t1 + t12 * u22 * t2
        assert (
            r1 % (2 * two_j) == 0
            and r2 % (4 * two_j) == 0
            and r3 % two_j == 0
        )
        g1 = (r1 // (2 * two_j)) % 2
        g2 = (r2 // (4 * two_j)) % 2
        g3 = (r3 // two_j) % 2
        a_corr = g1
        c_corr = g2
        b_corr = (g3 - g1) % 2
        u11 += two_j * a_corr
        t12 += two_j * b_corr
        u22 += 2 * two_j * c_corr
    m1, m2 = 2**k, 2 ** (k + 1)
    return [[u11 % m1, u21 % m1], [(2 * t12) % m2, u22 % m2]]


def _construct_two_u(block: LocalBlock) -> list[list[int]]:
    (k,) = block.exponents
    return [[1, 0], [0, 2**k - 1]]


def _construct_two_v(block: LocalBlock) -> list[list[int]]:
    """Lift the identity (an anti-automorphism mod 2) through the V-shape
    conditions  2^k | u11^2+u11*u12+u12^2+1  etc."""
    (k,) = block.exponents
    u11, u12, u21, u22 = 1, 0, 0, 1
    for j in range(1, k):
        two_j = 2**j
        r1 = u11 * u11 + u11 * u12 + u12 * u12 + 1
        r2 = u21 * u21 + u21 * u22 + u22 * u22 + 1
        r3 = 2 * (u11 * u21 + u12 * u22) + (u11 * u22 + u12 * u21) + 1
        assert r1 % two_j == 0 and r2 % two_j == 0 and r3 % two_j == 0
        b_corr = (r1 // two_j) % 2
        c_corr = (r2 // two_j) % 2
        a_corr = (r3 // two_j) % 2
        u11 += two_j * a_corr
        u12 += two_j * b_corr
        u21 += two_j * c_corr
    modulus = 2**k
    return [
        [u11 % modulus, u21 % modulus],
        [u12 % modulus, u22 % modulus],
    ]


def _construct_for_block(block: LocalBlock) -> list[list[int]]:
    if block.kind == ODD_CYCLIC:
        return _construct_odd_cyclic(block)
    if block.kind == ODD_DIAGONAL:
        if block.prime % 4 == 1:
            return _construct_odd_diagonal_split(block)
        return _construct_odd_diagonal_equal(block)
    if block.kind == TWO_DIAGONAL:
        k1, k2 = block.exponents
        if k1 == k2:
            return _construct_two_diagonal_equal(block)
        return _construct_two_diagonal_step(block)
    if block.kind == TWO_U:
        return _construct_two_u(block)
    if block.kind == TWO_V:
        return _construct_two_v(block)
    raise NoAntiAutomorphism(f"shape {block.kind} admits none")


def construct_anti_automorphism(form: FiniteQuadraticForm) -> AntiAutomorphism:
    """Explicit anti-automorphism via the catalogue; raises
    NoAntiAutomorphism when the criterion says none exists."""
    parts = sylow_parts(form)
    part_maps: list[list[list[int]]] = []
    for part in parts:
        block, c, cinv = _classify_with_transform(part.form)
        if not block_admits_anti_automorphism(block):
            raise NoAntiAutomorphism(
                f"component {block.describe()} admits no anti-automorphism"
            )
        f_canonical = _construct_for_block(block)
        # verify on the canonical model before transporting
        model = _canonical_block_form(block)
        assert is_anti_automorphism(model, f_canonical), block.describe()
        f_part = intmat.mat_mul(intmat.mat_mul(c, f_canonical), cinv)
        npart = part.form.ngens
        f_part = [
            [f_part[t][j] % part.form.orders[t] for j in range(npart)]
            for t in range(npart)
        ]
        assert is_anti_automorphism(part.form, f_part), block.describe()
        part_maps.append(f_part)
    matrix = _assemble_from_parts(form, parts, part_maps)
    return anti_automorphism(form, matrix)


def _assemble_from_parts(
    form: FiniteQuadraticForm,
    parts: Sequence[SylowPart],
    part_maps: Sequence[Sequence[Sequence[int]]],
) -> list[list[int]]:
    """Chinese-remainder a map per Sylow component into one on the form.

    g_j = sum_p alpha_{p,j} s_{p,j} with s_{p,j} = (d_j / p^e) g_j and
    alpha the inverse of that multiplier mod p^e, so
    F[t][j] = sum_p alpha_{p,j} m_{p,t} F_p[t][j] (positions translated).
    """
    n = form.ngens
    matrix = [[0] * n for _ in range(n)]
    for part, f_part in zip(parts, part_maps):
        pos = {idx: a for a, idx in enumerate(part.indices)}
        for j in part.indices:
            pj_order = part.form.orders[pos[j]]
            alpha = pow(part.multipliers[pos[j]] % pj_order, -1, pj_order)
            for t in part.indices:
                contrib = alpha * part.multipliers[pos[t]] * f_part[pos[t]][pos[j]]
                matrix[t][j] = (matrix[t][j] + contrib) % form.orders[t]
    return matrix


# ---------------------------------------------------------------------------
# Brute-force route (independent oracle) and isometry testing
# ---------------------------------------------------------------------------


def _find_part_map(
    source: FiniteQuadraticForm,
    target: FiniteQuadraticForm,
    sign: int,
) -> Optional[list[list[int]]]:
    """Backtracking search for a bijective map source -> target with
    q_target(f(x)) = sign * q_source(x).  Forms must be p-primary with equal
    order tuples (the caller guarantees it); returns the matrix or None."""
    n = source.ngens
    if n == 0:
        return []
    if source.orders != target.orders:
        return None
    elements = all_elements(target)
    buckets: dict[Fraction, list[tuple[int, ...]]] = {}
    for el in elements:
        buckets.setdefault(evaluate_q(target, el), []).append(el)

    images: list[tuple[int, ...]] = []

    def extend(j: int) -> bool:
        if j == n:
            matrix = [[images[col][row] for col in range(n)] for row in range(n)]
            return _is_bijective(target, matrix)
        want_q = (sign * source.q_gram[j][j]) % 2
        for el in buckets.get(want_q, ()):
            if source.orders[j] % element_order(target, el) != 0:
                continue
            ok = True
            for i in range(j):
                want_b = (sign * source.q_gram[i][j]) % 1
                if bilinear_b(target, images[i], el) != want_b:
                    ok = False
                    break
            if not ok:
                continue
            images.append(el)
            if extend(j + 1):
                return True
            images.pop()
        return False

    if extend(0):
        return [[images[col][row] for col in range(n)] for row in range(n)]
    return None


def brute_force_anti_automorphism(
    form: FiniteQuadraticForm, cap: int = 512
) -> Optional[AntiAutomorphism]:
    """Search an anti-automorphism without the catalogue (per-prime
    backtracking, CRT-assembled).  None means proven absent; CapExceeded
    when the group is larger than ``cap``."""
    total = group_order(form)
    if total > cap:
        raise CapExceeded(f"group order {total} exceeds cap {cap}")
    parts = sylow_parts(form)
    part_maps = []
    for part in parts:
        found = _find_part_map(part.form, part.form, -1)
        if found is None:
            return None
        part_maps.append(found)
    matrix = _assemble_from_parts(form, parts, part_maps)
    return anti_automorphism(form, matrix)


def are_isometric(
    form1: FiniteQuadraticForm, form2: FiniteQuadraticForm, cap: int = 512
) -> bool:
    """Isometry of finite quadratic forms, by per-prime backtracking search."""
    if form1.orders != form2.orders:
        return False
    total = group_order(form1)
    if total > cap:
        raise CapExceeded(f"group order {total} exceeds cap {cap}")
    parts1 = sylow_parts(form1)
    parts2 = sylow_parts(form2)
    for p1, p2 in zip(parts1, parts2):
        if _find_part_map(p1.form, p2.form, 1) is None:
            return False
    return True


def are_anti_isometric(
    form1: FiniteQuadraticForm, form2: FiniteQuadraticForm, cap: int = 512
) -> bool:
    """q_2(f(x)) = -q_1(x) for some bijection: isometry against the negation."""
    return are_isometric(form1, negated(form2), cap)
