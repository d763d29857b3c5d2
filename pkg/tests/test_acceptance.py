"""Acceptance criteria: end-to-end checks with pinned time budgets.

Each test prints exactly one line

    ACCEPTANCE C<n>: PASS|FAIL - <summary> (<elapsed>s)

and fails if the checks fail or the budget is exceeded.  Run with
``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import random
import time
from fractions import Fraction

from abmirror import discforms as df
from abmirror import lattices as lat
from abmirror import mirrors as mi
from abmirror import mukai as mk
from abmirror import periods as pd
from abmirror.gaussian import GaussianRational, I, ONE, ZERO
from abmirror.intmat import det as int_det

U = lat.hyperbolic_plane()


def _timed(number, budget, body):
    start = time.monotonic()
    try:
        detail = body()
    except Exception as exc:  # print the FAIL line, then re-raise
        elapsed = time.monotonic() - start
        print(f"ACCEPTANCE C{number}: FAIL - {exc} ({elapsed:.2f}s)")
        raise
    elapsed = time.monotonic() - start
    verdict = "PASS" if elapsed < budget else "FAIL"
    print(f"ACCEPTANCE C{number}: {verdict} - {detail} ({elapsed:.2f}s)")
    assert elapsed < budget, f"exceeded the {budget}s budget"


def test_c1_analyze_two_reference_lattices():
    def body():
        first = mi.analyze(lat.make_lattice([[0, 3], [3, 2]]))
        assert first.disc_orders == (9,)
        assert first.simple is False
        assert first.admits_mirror is True
        assert first.self_mirror is False
        assert first.mirror_representative_gram == ((0, -3), (-3, -2))

        second = mi.analyze(lat.make_lattice([[2, 3], [3, 2]]))
        assert second.disc_orders == (5,)
        assert second.simple is True
        assert second.self_mirror is True
        return "order-9 non-simple non-self-mirror; order-5 simple self-mirror"

    _timed(1, 1.0, body)


def test_c2_rescaled_planes_are_self_mirror():
    def body():
        for n in range(1, 51):
            lattice = lat.rescale(U, n)
            assert mi.is_self_mirror(lattice), n
            form = df.discriminant_form(lattice)
            witness = df.construct_anti_automorphism(form)
            assert df.is_anti_automorphism(form, witness.matrix), n
        return "U(n) self-mirror with validated witness for n = 1..50"

    _timed(2, 5.0, body)


def test_c3_rank_one_mirrors_and_refusals():
    def body():
        for n in range(1, 51):
            small = lat.rank_one(2 * n)
            big = lat.direct_sum(U, lat.rank_one(-2 * n))
            assert mi.are_mirror_partners(small, big), n
            assert mi.are_mirror_partners(big, small), n
        blocked3 = lat.make_lattice([[2, 0, 0], [0, -2, 0], [0, 0, -2]])
        assert mi.satisfies_condition_diamond(blocked3) is False
        blocked4 = lat.direct_sum(U, lat.rank_one(-2), lat.rank_one(-2))
        assert mi.satisfies_condition_diamond(blocked4) is False
        return "rank-1/rank-3 pairs for n = 1..50; rank-3 and rank-4 refusals"

    _timed(3, 10.0, body)


def test_c4_criterion_matches_brute_force_on_rank2_grid():
    def body():
        checked = 0
        admitted = 0
        for a in range(-12, 13, 2):
            for c in range(-12, 13, 2):
                for b in range(-12, 13):
                    det = a * c - b * b
                    if det >= 0 or abs(det) > 200:
                        continue
                    lattice = lat.make_lattice([[a, b], [b, c]])
                    form = df.discriminant_form(lattice)
                    verdict = df.has_anti_automorphism(form)
                    brute = df.brute_force_anti_automorphism(form, 512)
                    assert verdict == (brute is not None), (a, b, c)
                    if brute is not None:
                        assert df.is_anti_automorphism(form, brute.matrix)
                    if verdict:
                        witness = df.construct_anti_automorphism(form)
                        assert df.is_anti_automorphism(form, witness.matrix)
                        admitted += 1
                    checked += 1
        assert checked > 1000
        return (
            f"classification == brute force on {checked} rank-2 lattices "
            f"({admitted} admit)"
        )

    _timed(4, 300.0, body)


def test_c5_principally_polarized_route_agreement():
    def body():
        for n in range(1, 201):
            for gram in ([[2, 1], [1, -2 * n]], [[2, 0], [0, -2 * n]]):
                lattice = lat.make_lattice(gram)
                shortcut = mi.is_self_mirror_principally_polarized(lattice)
                assert shortcut is not None, gram
                assert shortcut == mi.is_self_mirror(lattice), gram
        return "shortcut == full route on 400 principally polarized lattices"

    _timed(5, 30.0, body)


def _random_hyperbolic_rank2(rng):
    while True:
        a = 2 * rng.randint(-3, 3)
        b = rng.randint(-6, 6)
        c = 2 * rng.randint(-3, 3)
        if a * c - b * b < 0:
            return lat.make_lattice([[a, b], [b, c]])


def _random_class(rng, lattice, ref):
    while True:
        b_field = tuple(
            Fraction(rng.randint(-6, 6), rng.randint(1, 3))
            for _ in range(lattice.rank)
        )
        kappa = tuple(
            Fraction(rng.randint(-6, 6), rng.randint(1, 3))
            for _ in range(lattice.rank)
        )
        if mk._rational_norm(lattice, kappa) <= 0:
            continue
        if mk._rational_pairing_int(lattice, kappa, ref) < 0:
            kappa = tuple(-k for k in kappa)
        return mk.make_kahler_class(lattice, b_field, kappa, ref)


def test_c6_volume_involution_on_random_classes():
    def body():
        rng = random.Random(0)
        lattices = [_random_hyperbolic_rank2(rng) for _ in range(10)]
        total = 0
        for lattice in lattices:
            ref = mk.default_positive_vector(lattice)
            dual = mk.dual_isometry(lattice)
            n = lattice.rank + 2
            matrix = [list(r) for r in dual]
            assert int_det([row[:] for row in matrix]) == -1
            identity = [
                [1 if i == j else 0 for j in range(n)] for i in range(n)
            ]
            assert [
                [
                    sum(matrix[i][k] * matrix[k][j] for k in range(n))
                    for j in range(n)
                ]
                for i in range(n)
            ] == identity
            # fixes the divisor block pointwise
            for i in range(lattice.rank):
                assert matrix[i] == identity[i]
            for _ in range(100):
                omega = _random_class(rng, lattice, ref)
                vol = mk.volume(omega)
                inverse = mk.inverse_kahler_class(omega)
                assert mk.inverse_kahler_class(inverse) == omega
                assert vol * mk.volume(inverse) == ONE
                # the inverse stays in the reference cone component
                assert (
                    mk._rational_pairing_int(lattice, inverse.kahler, ref) > 0
                )
                expo = mk.to_coordinates(mk.mukai_exponential(omega))
                lifted = mk.to_coordinates(
                    mk.mukai_exponential(inverse).scaled(vol)
                )
                assert mk.apply_isometry(dual, expo) == lifted
                total += 1
        return f"exact involution and duality identities on {total} classes"

    _timed(6, 10.0, body)


def _random_gaussian(rng):
    return GaussianRational(
        Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
        Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
    )


def test_c7_plucker_vectors_are_isotropic():
    def body():
        rng = random.Random(1)
        for _ in range(1000):
            rows = [[_random_gaussian(rng) for _ in range(4)] for _ in range(2)]
            vector = pd.plucker(rows)
            assert pd.wedge_pairing(vector, vector) == ZERO

        fixture1 = pd.analyze_period([[1, I, 0, 0], [0, 0, 1, I]])
        assert fixture1.conjugate_pairing == GaussianRational.of(4)
        assert fixture1.admissible is True
        fixture2 = pd.analyze_period([[1, 0, I, 0], [0, 1, 0, I]])
        assert fixture2.conjugate_pairing == GaussianRational.of(-4)
        assert fixture2.admissible is False
        return "v.v = 0 on 1000 random period matrices plus both fixtures"

    _timed(7, 5.0, body)


def test_c8_every_small_lattice_embeds_with_mirror_complement():
    def body():
        count = 0
        for n in range(1, 31):
            lattice = lat.rank_one(2 * n)
            assert mi.satisfies_condition_diamond(lattice)
            witness = mi.primitive_embedding_into_2U(lattice, bound=8)
            assert witness is not None, n
            assert witness.complement_verified, n
            count += 1
        for a in range(-12, 13, 2):
            for c in range(-12, 13, 2):
                for b in range(-12, 13):
                    det = a * c - b * b
                    if det >= 0 or abs(det) > 60:
                        continue
                    lattice = lat.make_lattice([[a, b], [b, c]])
                    assert mi.satisfies_condition_diamond(lattice)
                    witness = mi.primitive_embedding_into_2U(lattice, bound=8)
                    assert witness is not None, (a, b, c)
                    assert witness.complement_verified, (a, b, c)
                    count += 1
        return f"embedding witness with anti-isometric complement, {count} lattices"

    _timed(8, 120.0, body)
