"""Search kernels: canonical enumeration order, pure vs compiled parity."""

import pytest

from abmirror import kernels
from abmirror.kernels import pure

U = [[0, 1], [1, 0]]


def test_canonical_value_order():
    assert pure.canonical_values(2) == [0, 1, -1, 2, -2]
    assert pure.canonical_values(1) == [0, 1, -1]


def test_iter_box_order_rank1():
    assert list(pure.iter_box(1, 2)) == [(0,), (1,), (-1,), (2,), (-2,)]


def test_iter_box_order_rank2():
    # first coordinate varies fastest
    assert list(pure.iter_box(2, 1)) == [
        (0, 0),
        (1, 0),
        (-1, 0),
        (0, 1),
        (1, 1),
        (-1, 1),
        (0, -1),
        (1, -1),
        (-1, -1),
    ]


def test_find_vector_with_norm_first_witness():
    # first nonzero canonical-order solutions, frozen
    assert pure.find_vector_with_norm([[2, 1], [1, -2]], 2, 3) == (1, 0)
    assert pure.find_vector_with_norm(U, 2, 2) == (1, 1)
    assert pure.find_vector_with_norm([[2]], 8, 3) == (2,)
    assert pure.find_vector_with_norm([[2]], 6, 3) is None
    assert pure.find_vector_with_norm(U, 0, 2) == (1, 0)  # nonzero isotropic


def test_vectors_with_norm_enumeration():
    assert pure.vectors_with_norm(U, 2, 2) == [(1, 1), (-1, -1)]
    assert pure.vectors_with_norm([[2]], 8, 3) == [(2,), (-2,)]
    # canonical order: first coordinate varies fastest
    assert pure.vectors_with_norm([[2, 0], [0, -2]], 0, 1) == [
        (1, 1),
        (-1, 1),
        (1, -1),
        (-1, -1),
    ]


def test_ambient_constants():
    assert pure.AMBIENT_GRAM == (
        (0, 1, 0, 0),
        (1, 0, 0, 0),
        (0, 0, 0, 1),
        (0, 0, 1, 0),
    )
    assert pure.ambient_norm((1, 1, 0, 0)) == 2
    assert pure.ambient_norm((1, 0, 0, 1)) == 0
    assert pure.ambient_pairing((1, 0, 0, 0), (0, 1, 0, 0)) == 1


def test_primitive_embedding_frozen_witnesses():
    # canonical first witnesses, pinned
    assert pure.find_primitive_embedding([[2]], 2) == ((1, 1, 0, 0),)
    assert pure.find_primitive_embedding(U, 2) == ((1, 0, 0, 0), (0, 1, 0, 0))
    assert pure.find_primitive_embedding([[2, 1], [1, -2]], 3) == (
        (1, 1, 0, 0),
        (2, -1, 1, 1),
    )


def test_primitive_embedding_respects_gram_and_primitivity():
    targets = [
        [[2]],
        [[4]],
        [[-6]],
        U,
        [[2, 0], [0, -2]],
        [[2, 1], [1, -4]],
        [[0, 2], [2, 0]],
    ]
    for gram in targets:
        images = pure.find_primitive_embedding(gram, 4)
        assert images is not None, gram
        r = len(gram)
        for i in range(r):
            for j in range(r):
                assert pure.ambient_pairing(images[i], images[j]) == gram[i][j]
        assert pure.is_primitive_family(images)


def test_is_primitive_family():
    assert pure.is_primitive_family(((1, 0, 0, 0),))
    assert not pure.is_primitive_family(((2, 0, 0, 0),))
    assert pure.is_primitive_family(((1, 0, 0, 0), (0, 1, 0, 0)))
    assert not pure.is_primitive_family(((2, 0, 0, 0), (0, 2, 0, 0)))
    assert not pure.is_primitive_family(((1, 0, 1, 0), (1, 0, 1, 0)))


needs_compiled = pytest.mark.skipif(
    not kernels.compiled_available(), reason="compiled kernel not built"
)


@needs_compiled
def test_backends_agree_on_vector_search():
    grams = [
        [[2]],
        [[-2]],
        [[4]],
        U,
        [[2, 1], [1, -2]],
        [[2, 0], [0, -4]],
        [[0, 3], [3, 2]],
        [[2, 1, 0], [1, -2, 1], [0, 1, -4]],
    ]
    for gram in grams:
        for target in (-4, -2, 0, 2, 4, 6):
            for bound in (1, 2, 3):
                want = pure.find_vector_with_norm(gram, target, bound)
                got = kernels.find_vector_with_norm(gram, target, bound)
                assert want == got, (gram, target, bound)
                want_all = pure.vectors_with_norm(gram, target, bound)
                got_all = kernels.vectors_with_norm(gram, target, bound)
                assert want_all == got_all, (gram, target, bound)


@needs_compiled
def test_backends_agree_on_embeddings():
    targets = [
        [[2]],
        [[4]],
        [[-2]],
        U,
        [[2, 1], [1, -2]],
        [[2, 0], [0, -2]],
        [[6, 1], [1, -2]],
        [[2, 0, 0], [0, -2, 0], [0, 0, -2]],
    ]
    for gram in targets:
        for bound in (1, 2, 3):
            want = pure.find_primitive_embedding(gram, bound)
            got = kernels.find_primitive_embedding(gram, bound)
            assert want == got, (gram, bound)


@needs_compiled
def test_force_pure_flag_routes_to_python():
    original = kernels.FORCE_PURE
    before = kernels.backend_name()
    try:
        kernels.FORCE_PURE = True
        assert kernels.backend_name() == "pure"
        assert kernels.find_vector_with_norm(U, 2, 2) == (1, 1)
    finally:
        kernels.FORCE_PURE = original
    assert kernels.backend_name() == before


def test_word_limit_guard_falls_back():
    # an enormous Gram entry must route to the arbitrary-precision path
    huge = 2**70
    got = kernels.find_vector_with_norm([[2 * huge]], 2 * huge, 2)
    assert got == (1,)
