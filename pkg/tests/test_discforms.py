"""Finite quadratic forms: discriminant forms, Sylow pieces, the local
classification, and anti-automorphisms via both routes (constructive and
brute force)."""

import itertools
import random
from fractions import Fraction

import pytest

from abmirror import discforms as df
from abmirror import intmat
from abmirror import lattices as lat
from abmirror.errors import CapExceeded, Unclassifiable, ValidationError

F = Fraction
U = lat.hyperbolic_plane()


# ---------------------------------------------------------------------------
# an independent oracle: q-values straight from cosets of G * Z^n
#
# The discriminant group is Z^n / G Z^n.  With L G R = D (Smith form),
# x ~ y iff L x = L y mod D, so x = L^{-1} c runs over representatives as c
# runs over the boxes [0, d_i).  The quadratic value of the class of x is
# x^T G^{-1} x mod 2.  No generator choices are involved, so comparing the
# multiset of values against the packaged discriminant form checks the
# generators, the q matrix, and the evaluation rule at once.


def coset_q_multiset(gram):
    n = len(gram)
    left, diag, _right = intmat.smith_normal_form([list(r) for r in gram])
    dvals = [diag[i][i] for i in range(n)]
    linv = intmat.invert_rational(left)
    linv_int = [[int(x) for x in row] for row in linv]
    ginv = intmat.invert_rational([list(r) for r in gram])
    values = []
    for combo in itertools.product(*(range(d) for d in dvals)):
        x = [
            sum(linv_int[i][j] * combo[j] for j in range(n)) for i in range(n)
        ]
        q = sum(
            F(x[i]) * ginv[i][j] * x[j] for i in range(n) for j in range(n)
        )
        values.append(q % 2)
    return sorted(values)


def packaged_q_multiset(form):
    return sorted(df.evaluate_q(form, el) for el in df.all_elements(form))


@pytest.mark.parametrize(
    "gram",
    [
        [[0, 3], [3, 2]],
        [[2, 3], [3, 2]],
        [[0, 5], [5, 0]],
        [[2, 0], [0, -4]],
        [[2, 1], [1, -2]],
        [[2, 0], [0, -6]],
        [[4, 1], [1, -4]],
        [[2, 1, 0], [1, -2, 1], [0, 1, -4]],
        [[6]],
        [[-8]],
        [[2, 0, 0], [0, -2, 0], [0, 0, -2]],
    ],
)
def test_discriminant_form_against_coset_oracle(gram):
    lattice = lat.make_lattice(gram)
    form = df.discriminant_form(lattice)
    assert df.group_order(form) == abs(lat.determinant(lattice))
    assert packaged_q_multiset(form) == coset_q_multiset(gram)


def test_discriminant_form_frozen_values():
    f9 = df.discriminant_form(lat.make_lattice([[0, 3], [3, 2]]))
    assert f9.orders == (9,)
    assert f9.q_gram == ((F(16, 9),),)

    f5 = df.discriminant_form(lat.make_lattice([[2, 3], [3, 2]]))
    assert f5.orders == (5,)
    assert f5.q_gram == ((F(8, 5),),)

    u5 = df.discriminant_form(lat.rescale(U, 5))
    assert u5.orders == (5, 5)
    assert df.evaluate_q(u5, (1, 1)) == F(2, 5)
    assert df.evaluate_q(u5, (1, 0)) == 0

    trivial = df.discriminant_form(U)
    assert trivial.orders == ()
    assert df.group_order(trivial) == 1


def test_make_form_validation():
    df.make_form((2, 4), [[F(1, 2), F(1, 2)], [F(1, 2), F(1, 4)]])
    with pytest.raises(ValidationError):
        df.make_form((4, 2), [[F(1, 4), 0], [0, F(1, 2)]])  # not ascending
    with pytest.raises(ValidationError):
        df.make_form((3,), [[F(1, 2)]])  # 9 * 1/2 is not an even integer
    with pytest.raises(ValidationError):
        df.make_form((2, 2), [[F(1, 2), F(1, 3)], [F(1, 3), F(1, 2)]])


def test_make_form_reduces_windows():
    form = df.make_form((5,), [[F(12, 5)]])
    assert form.q_gram == ((F(2, 5),),)


def test_evaluate_and_bilinear_identity():
    rng = random.Random(77)
    forms = [
        df.discriminant_form(lat.make_lattice(g))
        for g in ([[0, 3], [3, 2]], [[2, 0], [0, -4]], [[0, 4], [4, 0]], [[2, 1], [1, -4]])
    ]
    for form in forms:
        elements = list(df.all_elements(form))
        for _ in range(60):
            x = rng.choice(elements)
            y = rng.choice(elements)
            s = tuple((a + b) % d for a, b, d in zip(x, y, form.orders))
            lhs = (df.evaluate_q(form, s) - df.evaluate_q(form, x) - df.evaluate_q(form, y)) % 2
            rhs = (2 * df.bilinear_b(form, x, y)) % 2
            assert lhs == rhs


def test_element_order():
    form = df.discriminant_form(lat.rescale(U, 6))
    assert df.element_order(form, (0, 0)) == 1
    assert df.element_order(form, (1, 0)) == 6
    assert df.element_order(form, (2, 0)) == 3
    assert df.element_order(form, (3, 2)) == 6


def test_sylow_parts_decompose_orders():
    form = df.discriminant_form(lat.rescale(U, 12))
    by_prime = df.sylow_decompose(form)
    assert sorted(by_prime) == [2, 3]
    assert by_prime[2].orders == (4, 4)
    assert by_prime[3].orders == (3, 3)
    # Sylow components, read off through their multipliers, reassemble the
    # global quadratic value
    parts = df.sylow_parts(form)
    for el in ((1, 0), (1, 1), (5, 7), (10, 3)):
        total = df.evaluate_q(form, el)
        acc = F(0)
        for part in parts:
            component = tuple(
                (m * el[i]) % o
                for m, i, o in zip(part.multipliers, part.indices, part.form.orders)
            )
            acc += df.evaluate_q(part.form, component)
        assert acc % 2 == total


def test_classification_frozen_two_diagonal():
    form = df.discriminant_form(lat.make_lattice([[2, 0], [0, -4]]))
    parts = df.sylow_decompose(form)
    block = df.classify_local(parts[2])
    assert block.kind == df.TWO_DIAGONAL
    assert block.exponents == (1, 2)
    assert block.units == (1, 7)


def test_classification_u_rescaled():
    for n, odd_p in ((3, 3), (5, 5), (7, 7), (15, 3)):
        form = df.discriminant_form(lat.rescale(U, n))
        parts = df.sylow_decompose(form)
        block = df.classify_local(parts[odd_p])
        assert block.kind == df.ODD_DIAGONAL
        t1, t2 = block.units
        # the square class of t1*t2 must match that of -1 (hyperbolic shape)
        euler = pow(t1 * t2 % odd_p, (odd_p - 1) // 2, odd_p)
        euler_minus_one = pow(odd_p - 1, (odd_p - 1) // 2, odd_p)
        assert euler == euler_minus_one
    form = df.discriminant_form(lat.rescale(U, 4))
    block = df.classify_local(df.sylow_decompose(form)[2])
    assert block.kind == df.TWO_U


def test_classification_cyclic():
    form = df.discriminant_form(lat.rank_one(2 * 9))
    parts = df.sylow_decompose(form)
    assert df.classify_local(parts[3]).kind == df.ODD_CYCLIC
    assert df.classify_local(parts[2]).kind == df.TWO_CYCLIC


def test_classification_v_shape():
    d4 = lat.make_lattice(
        [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
    )
    form = df.discriminant_form(d4)
    assert df.group_order(form) == 4
    block = df.classify_local(df.sylow_decompose(form)[2])
    assert block.kind == df.TWO_V
    assert block.exponents == (1,)


def test_classification_refuses_three_generators():
    form = df.discriminant_form(
        lat.make_lattice([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    )
    parts = df.sylow_decompose(form)
    with pytest.raises(Unclassifiable):
        df.classify_local(parts[2])


def model_form(kind, p, exponents, units):
    """Canonical finite quadratic form of one local shape."""
    if kind == df.ODD_CYCLIC:
        (k,), (t,) = exponents, units
        return df.make_form((p**k,), [[F(2 * t, p**k)]])
    if kind == df.ODD_DIAGONAL:
        (k1, k2), (t1, t2) = exponents, units
        return df.make_form(
            (p**k1, p**k2),
            [[F(2 * t1, p**k1), 0], [0, F(2 * t2, p**k2)]],
        )
    if kind == df.TWO_CYCLIC:
        (k,), (t,) = exponents, units
        return df.make_form((2**k,), [[F(t, 2**k)]])
    if kind == df.TWO_DIAGONAL:
        (k1, k2), (t1, t2) = exponents, units
        return df.make_form(
            (2**k1, 2**k2),
            [[F(t1, 2**k1), 0], [0, F(t2, 2**k2)]],
        )
    if kind == df.TWO_U:
        (k,), (t,) = exponents, units
        return df.make_form(
            (2**k, 2**k), [[F(0), F(t, 2**k)], [F(t, 2**k), F(0)]]
        )
    if kind == df.TWO_V:
        (k,), (t,) = exponents, units
        return df.make_form(
            (2**k, 2**k),
            [[F(2 * t, 2**k), F(t, 2**k)], [F(t, 2**k), F(2 * t, 2**k)]],
        )
    raise AssertionError(kind)


EXISTENCE_CASES = [
    # (kind, p, exponents, units, admits)
    (df.ODD_CYCLIC, 5, (1,), (1,), True),
    (df.ODD_CYCLIC, 5, (2,), (2,), True),
    (df.ODD_CYCLIC, 13, (1,), (1,), True),
    (df.ODD_CYCLIC, 3, (1,), (1,), False),
    (df.ODD_CYCLIC, 7, (2,), (3,), False),
    (df.ODD_DIAGONAL, 3, (1, 1), (1, 1), True),
    (df.ODD_DIAGONAL, 3, (1, 2), (1, 1), False),
    (df.ODD_DIAGONAL, 5, (1, 2), (1, 2), True),
    (df.ODD_DIAGONAL, 7, (1, 1), (3, 5), True),
    (df.TWO_CYCLIC, 2, (1,), (1,), False),
    (df.TWO_CYCLIC, 2, (2,), (3,), False),
    (df.TWO_CYCLIC, 2, (3,), (7,), False),
    (df.TWO_DIAGONAL, 2, (1, 1), (1, 3), True),
    (df.TWO_DIAGONAL, 2, (1, 1), (1, 1), False),
    (df.TWO_DIAGONAL, 2, (1, 2), (1, 7), True),
    (df.TWO_DIAGONAL, 2, (1, 2), (1, 3), True),
    (df.TWO_DIAGONAL, 2, (1, 2), (1, 1), False),
    (df.TWO_DIAGONAL, 2, (1, 3), (1, 7), False),
    (df.TWO_DIAGONAL, 2, (2, 2), (3, 5), True),
    (df.TWO_U, 2, (1,), (1,), True),
    (df.TWO_U, 2, (3,), (1,), True),
    (df.TWO_V, 2, (1,), (1,), True),
    (df.TWO_V, 2, (2,), (1,), True),
]


@pytest.mark.parametrize("kind,p,exponents,units,admits", EXISTENCE_CASES)
def test_existence_table_against_brute_force(kind, p, exponents, units, admits):
    form = model_form(kind, p, exponents, units)
    parts = df.sylow_decompose(form)
    assert list(parts) == [p]
    block = df.classify_local(parts[p])
    assert block.kind == kind
    assert df.block_admits_anti_automorphism(block) is admits
    assert df.has_anti_automorphism(form) is admits
    brute = df.brute_force_anti_automorphism(form, cap=3000)
    assert (brute is not None) is admits
    if admits:
        witness = df.construct_anti_automorphism(form)
        assert df.is_anti_automorphism(form, witness.matrix)


def test_construct_multi_prime():
    # CRT assembly across 2-, 3- and 5-parts at once
    for n in (15, 20, 30):
        form = df.discriminant_form(lat.rescale(U, n))
        witness = df.construct_anti_automorphism(form)
        assert df.is_anti_automorphism(form, witness.matrix)
    # odd cyclic with two primes, both 1 mod 4: det -65
    form = df.discriminant_form(lat.make_lattice([[2, 1], [1, -32]]))
    assert form.orders == (65,)
    witness = df.construct_anti_automorphism(form)
    assert df.is_anti_automorphism(form, witness.matrix)


def test_anti_automorphism_frozen_witness():
    f5 = df.discriminant_form(lat.make_lattice([[2, 3], [3, 2]]))
    witness = df.construct_anti_automorphism(f5)
    assert witness.matrix == ((2,),)  # 2^2 = 4 = -1 mod 5
    assert not df.is_anti_automorphism(f5, ((1,),))  # identity is not


def test_anti_automorphism_requires_bijection():
    u5 = df.discriminant_form(lat.rescale(U, 5))
    assert df.is_anti_automorphism(u5, ((2, 0), (0, 2)))
    assert not df.is_anti_automorphism(u5, ((0, 0), (0, 2)))  # not injective
    assert not df.is_anti_automorphism(u5, ((2, 0), (0, 1)))  # wrong values


def test_u_rescaled_witness_is_reflection():
    # q(a1, a2) = 2 a1 a2 / n: negating one coordinate is an anti-isometry
    for n in (2, 3, 4, 9, 12):
        form = df.discriminant_form(lat.rescale(U, n))
        matrix = ((1, 0), (0, n - 1))
        assert df.is_anti_automorphism(form, matrix)


def test_brute_force_cap():
    form = df.discriminant_form(lat.rescale(U, 30))  # order 900
    with pytest.raises(CapExceeded):
        df.brute_force_anti_automorphism(form, cap=512)
    assert df.brute_force_anti_automorphism(form, cap=1000) is not None


def test_isometry_and_anti_isometry():
    a = df.discriminant_form(lat.make_lattice([[2, 3], [3, 2]]))
    b = df.discriminant_form(lat.make_lattice([[-2, 1], [1, 2]]))
    assert df.are_isometric(a, b)
    assert df.are_anti_isometric(a, b)  # this genus is anti-isometric to itself

    c = df.discriminant_form(lat.make_lattice([[0, 3], [3, 2]]))
    assert not df.are_isometric(a, c)  # different group orders
    assert not df.are_anti_isometric(a, c)

    d = df.discriminant_form(lat.rank_one(2))
    e = df.discriminant_form(lat.rank_one(-2))
    assert df.are_anti_isometric(d, e)
    assert not df.are_isometric(d, e)

    f9 = df.discriminant_form(lat.make_lattice([[0, 3], [3, 2]]))
    assert df.are_isometric(f9, f9)
    assert not df.has_anti_automorphism(f9)
    assert not df.are_anti_isometric(f9, f9)


def test_negated_involution():
    for gram in ([[0, 3], [3, 2]], [[2, 0], [0, -4]], [[2, 1], [1, -2]]):
        form = df.discriminant_form(lat.make_lattice(gram))
        assert df.negated(df.negated(form)) == form


def test_construct_agrees_with_brute_force_on_small_rank2_sample():
    rng = random.Random(9)
    cases = 0
    while cases < 40:
        a = 2 * rng.randint(-4, 4)
        b = rng.randint(-6, 6)
        c = 2 * rng.randint(-4, 4)
        det = a * c - b * b
        if det == 0 or abs(det) > 300:
            continue
        cases += 1
        form = df.discriminant_form(lat.make_lattice([[a, b], [b, c]]))
        table = df.has_anti_automorphism(form)
        brute = df.brute_force_anti_automorphism(form, cap=512)
        assert table is (brute is not None), (a, b, c)
        if table:
            witness = df.construct_anti_automorphism(form)
            assert df.is_anti_automorphism(form, witness.matrix)
