"""Pluecker vectors, wedge pairing, admissibility of period matrices."""

import random
from fractions import Fraction

import pytest

from abmirror import periods as pd
from abmirror.errors import ValidationError
from abmirror.gaussian import GaussianRational, I, ZERO
from abmirror.intmat import det


def g(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def test_minor_index_pairs_frozen():
    assert pd.MINOR_INDEX_PAIRS == (
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 2),
        (1, 3),
        (2, 3),
    )


def test_wedge_gram_frozen():
    rows = [list(r) for r in pd.WEDGE_GRAM]
    assert det(rows) == -1
    assert all(rows[i][i] == 0 for i in range(6))
    assert rows == [list(reversed(r)) for r in (
        [1, 0, 0, 0, 0, 0],
        [0, -1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, 1],
    )]


def test_wedge_to_three_planes():
    c = [list(r) for r in pd.wedge_to_three_planes()]
    assert abs(det(c)) == 1
    w = [list(r) for r in pd.WEDGE_GRAM]
    ct_w_c = [
        [
            sum(c[k][i] * w[k][m] * c[m][j] for k in range(6) for m in range(6))
            for j in range(6)
        ]
        for i in range(6)
    ]
    u_cubed = [[0] * 6 for _ in range(6)]
    for base in (0, 2, 4):
        u_cubed[base][base + 1] = 1
        u_cubed[base + 1][base] = 1
    assert ct_w_c == u_cubed


def test_plucker_basic():
    assert pd.plucker([[1, 0, 0, 0], [0, 1, 0, 0]]) == (1, 0, 0, 0, 0, 0)
    assert pd.plucker([[0, 0, 1, 0], [0, 0, 0, 1]]) == (0, 0, 0, 0, 0, 1)
    with pytest.raises(ValidationError):
        pd.plucker([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(ValidationError):
        pd.plucker([[1, 0, 0, 0]])


def _det4(rows):
    """Cofactor-expansion determinant over any commutative ring."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _det4(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _random_gaussian(rng):
    return GaussianRational(
        Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
        Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
    )


def test_wedge_pairing_is_stacked_determinant():
    rng = random.Random(7)
    for _ in range(60):
        a = [[_random_gaussian(rng) for _ in range(4)] for _ in range(2)]
        b = [[_random_gaussian(rng) for _ in range(4)] for _ in range(2)]
        v = pd.plucker(a)
        w = pd.plucker(b)
        assert pd.wedge_pairing(v, w) == _det4(a + b)
        # symmetric, and matches the Gram-matrix evaluation
        assert pd.wedge_pairing(w, v) == pd.wedge_pairing(v, w)
        gram_value = sum(
            (
                v[i] * w[j] * pd.WEDGE_GRAM[i][j]
                for i in range(6)
                for j in range(6)
                if pd.WEDGE_GRAM[i][j]
            ),
            ZERO,
        )
        assert gram_value == pd.wedge_pairing(v, w)
        # the Pluecker relation: stacked copies are singular
        assert pd.wedge_pairing(v, v) == ZERO


FIXTURE_ADMISSIBLE = [[g(1), I, g(0), g(0)], [g(0), g(0), g(1), I]]
FIXTURE_INADMISSIBLE = [[g(1), g(0), I, g(0)], [g(0), g(1), g(0), I]]


def test_exact_fixture_admissible():
    report = pd.analyze_period(FIXTURE_ADMISSIBLE, mode="exact")
    assert report.mode == "exact"
    assert report.vector == (g(0), g(1), I, I, g(-1), g(0))
    assert report.isotropy_residual == ZERO
    assert report.conjugate_pairing == g(4)
    assert report.admissible is True


def test_exact_fixture_inadmissible():
    report = pd.analyze_period(FIXTURE_INADMISSIBLE, mode="exact")
    assert report.vector == (g(1), g(0), I, -I, g(0), g(-1))
    assert report.conjugate_pairing == g(-4)
    assert report.admissible is False


def test_exact_accepts_plain_ints_and_fractions():
    report = pd.analyze_period(
        [[1, Fraction(1, 2), 0, 0], [0, 0, 1, I]], mode="exact"
    )
    assert report.isotropy_residual == ZERO
    assert isinstance(report.vector[0], GaussianRational)


def test_float_fixtures():
    rows = [[1.0, 1j, 0.0, 0.0], [0.0, 0.0, 1.0, 1j]]
    report = pd.analyze_period(rows, mode="float")
    assert report.mode == "float"
    assert report.admissible is True
    assert abs(report.conjugate_pairing - 4.0) < 1e-12

    bad = [[1.0, 0.0, 1j, 0.0], [0.0, 1.0, 0.0, 1j]]
    report2 = pd.analyze_period(bad, mode="float")
    assert report2.admissible is False
    assert abs(report2.conjugate_pairing + 4.0) < 1e-12


def test_float_mode_accepts_exact_entries():
    report = pd.analyze_period(FIXTURE_ADMISSIBLE, mode="float")
    assert report.admissible is True


def test_dependent_rows_rejected():
    rows = [[1, 2, 3, 4], [2, 4, 6, 8]]
    with pytest.raises(ValidationError):
        pd.analyze_period(rows, mode="exact")
    with pytest.raises(ValidationError):
        pd.analyze_period(rows, mode="float")


def test_mode_and_entry_validation():
    with pytest.raises(ValidationError):
        pd.analyze_period(FIXTURE_ADMISSIBLE, mode="decimal")
    with pytest.raises(ValidationError):
        pd.analyze_period([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(ValidationError):
        pd.analyze_period([[1j, 0, 0, 0], [0, 1, 0, 1]], mode="exact")


def test_random_exact_matrices_isotropic():
    rng = random.Random(11)
    seen = 0
    while seen < 40:
        rows = [[_random_gaussian(rng) for _ in range(4)] for _ in range(2)]
        try:
            report = pd.analyze_period(rows, mode="exact")
        except ValidationError:
            continue  # dependent rows, resample
        assert report.isotropy_residual == ZERO
        assert report.conjugate_pairing.is_real()
        seen += 1
