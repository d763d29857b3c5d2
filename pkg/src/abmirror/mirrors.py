"""Mirror-symmetry criteria for hyperbolic-signature even lattices.

Two even lattices M (signature (1, r-1)) and N (signature (1, s-1)) are
mirror partners when r + s = 4 and their discriminant forms are
anti-isometric.  The structural criterion used throughout:

* rank 1 and 2 lattices always admit a mirror partner;
* a rank 3 lattice admits one iff its discriminant form is isometric to the
  discriminant form of a rank-1 lattice of norm -det (the "diamond"
  condition);
* rank >= 4 never admits one (the partner would need rank <= 0).

Rank-2 mirrors are realised concretely by primitive embeddings into U + U
with the orthogonal complement as the partner; that bounded search shares
the canonical enumeration order of :mod:`abmirror.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import intmat, kernels
from .discforms import (
    are_anti_isometric,
    are_isometric,
    construct_anti_automorphism,
    discriminant_form,
    group_order,
    has_anti_automorphism,
)
from .errors import (
    SearchExhausted,
    ValidationError,
    WrongRank,
    WrongSignature,
)
from .kernels.pure import AMBIENT_GRAM, ambient_pairing, is_primitive_family
from .lattices import (
    GramLattice,
    determinant,
    direct_sum,
    hyperbolic_plane,
    is_simple,
    make_lattice,
    rank_one,
    represents,
    signature,
)


def _require_hyperbolic(lattice: GramLattice) -> None:
    plus, minus = signature(lattice)
    if plus != 1:
        raise WrongSignature(
            f"signature ({plus},{minus}) is not (1, rank-1)"
        )


def satisfies_condition_diamond(lattice: GramLattice, cap: int = 512) -> bool:
    """Admits-a-mirror criterion for signature (1, rank-1) lattices.

    rank <= 2: always; rank 3: discriminant form must match that of the
    rank-1 lattice of norm -det (det is automatically positive and even
    here); rank >= 4: never.
    """
    _require_hyperbolic(lattice)
    n = lattice.rank
    if n <= 2:
        return True
    if n >= 4:
        return False
    det = determinant(lattice)
    if det % 2 != 0:
        return False
    model = discriminant_form(make_lattice([[-det]]))
    return are_isometric(discriminant_form(lattice), model, cap)


def admits_mirror_partner(lattice: GramLattice, cap: int = 512) -> bool:
    return satisfies_condition_diamond(lattice, cap)


def are_mirror_partners(
    first: GramLattice, second: GramLattice, cap: int = 512
) -> bool:
    """Ranks sum to 4 and discriminant forms are anti-isometric."""
    _require_hyperbolic(first)
    _require_hyperbolic(second)
    if first.rank + second.rank != 4:
        return False
    return are_anti_isometric(
        discriminant_form(first), discriminant_form(second), cap
    )


@dataclass(frozen=True)
class EmbeddingWitness:
    """A primitive embedding into U + U, with its orthogonal complement.

    ``images[i]`` is the image of the i-th basis vector in the fixed
    ambient basis (e1, f1, e2, f2); ``complement`` is the Gram matrix of
    the orthogonal complement in a saturated basis; ``complement_verified``
    records whether the anti-isometry of discriminant forms was checked
    (it is skipped only when the group is larger than the cap).
    """

    images: tuple[tuple[int, ...], ...]
    complement: GramLattice
    complement_verified: bool


def _ambient_complement(images: Sequence[Sequence[int]]) -> GramLattice:
    """Gram matrix of the orthogonal complement of the images in U + U."""
    # pairing with v equals plain dot product with swapped halves of v
    swapped = [[v[1], v[0], v[3], v[2]] for v in images]
    basis = intmat.kernel_basis(swapped)
    gram = [
        [
            sum(
                wi[a] * AMBIENT_GRAM[a][b] * wj[b]
                for a in range(4)
                for b in range(4)
            )
            for wj in basis
        ]
        for wi in basis
    ]
    return make_lattice(gram)


def primitive_embedding_into_2U(
    lattice: GramLattice, bound: int = 8, cap: int = 512
) -> Optional[EmbeddingWitness]:
    """Bounded search for a primitive isometric embedding into U + U.

    Returns None when the coordinate box holds no witness.  The witness's
    complement discriminant form is verified anti-isometric to the
    lattice's whenever the group order is within ``cap``.
    """
    if lattice.rank > 4:
        raise WrongRank("ambient U + U has rank 4")
    images = kernels.find_primitive_embedding(lattice.gram, bound)
    if images is None:
        return None
    for i in range(len(images)):
        for j in range(len(images)):
            if ambient_pairing(images[i], images[j]) != lattice.gram[i][j]:
                raise AssertionError("kernel returned a non-isometric embedding")
    if not is_primitive_family(images):
        raise AssertionError("kernel returned a non-primitive embedding")
    complement = _ambient_complement(images)
    verified = False
    if group_order(discriminant_form(lattice)) <= cap:
        if not are_anti_isometric(
            discriminant_form(lattice), discriminant_form(complement), cap
        ):
            raise AssertionError("complement discriminant form mismatch")
        verified = True
    return EmbeddingWitness(
        images=tuple(tuple(v) for v in images),
        complement=complement,
        complement_verified=verified,
    )


def mirror_ns_representative(
    lattice: GramLattice, bound: int = 8, cap: int = 512
) -> GramLattice:
    """A concrete mirror partner.

    rank 1 <2n>: U + <-2n>; rank 2: orthogonal complement of a primitive
    embedding into U + U (SearchExhausted when the bounded search fails);
    rank 3 with the diamond condition: <det>.  Raises ValidationError when
    no partner exists at all.
    """
    _require_hyperbolic(lattice)
    n = lattice.rank
    if n == 1:
        norm = lattice.gram[0][0]
        return direct_sum(hyperbolic_plane(), rank_one(-norm))
    if n == 2:
        witness = primitive_embedding_into_2U(lattice, bound, cap)
        if witness is None:
            raise SearchExhausted(
                f"no primitive embedding into U + U with coordinates <= {bound}"
            )
        return witness.complement
    if n == 3:
        if not satisfies_condition_diamond(lattice, cap):
            raise ValidationError("rank-3 lattice admits no mirror partner")
        return rank_one(determinant(lattice))
    raise ValidationError("rank >= 4 lattices admit no mirror partner")


def is_self_mirror(lattice: GramLattice) -> bool:
    """Rank-2 criterion: the discriminant form admits an anti-automorphism."""
    if lattice.rank != 2:
        raise WrongRank("self-mirror symmetry is a rank-2 question")
    _require_hyperbolic(lattice)
    return has_anti_automorphism(discriminant_form(lattice))


def are_stably_equivalent(
    first: GramLattice, second: GramLattice, cap: int = 512
) -> bool:
    """Same-genus test for rank-2 hyperbolic lattices: isometric
    discriminant forms (ranks and signatures already agree)."""
    for lat in (first, second):
        if lat.rank != 2:
            raise WrongRank("stable equivalence is a rank-2 question")
        _require_hyperbolic(lat)
    return are_isometric(
        discriminant_form(first), discriminant_form(second), cap
    )


def _odd_part_has_3_mod_4_factor(n: int) -> bool:
    m = abs(n)
    while m % 2 == 0:
        m //= 2
    p = 3
    while p * p <= m:
        while m % p == 0:
            if p % 4 == 3:
                return True
            m //= p
        p += 2
    return m > 1 and m % 4 == 3


def is_self_mirror_principally_polarized(
    lattice: GramLattice, bound: int = 8
) -> Optional[bool]:
    """Self-mirror test specialised to principally polarized lattices.

    Requires a vector of norm 2 (the principal polarization class); when the
    bounded search finds none the answer is None ("not established").
    Otherwise: self-mirror iff |det| is divisible by neither 16 nor any
    prime = 3 mod 4.
    """
    if lattice.rank != 2:
        raise WrongRank("self-mirror symmetry is a rank-2 question")
    _require_hyperbolic(lattice)
    if represents(lattice, 2, bound) is None:
        return None
    det = abs(determinant(lattice))
    if det % 16 == 0:
        return False
    return not _odd_part_has_3_mod_4_factor(det)


def shioda_involutions(
    m_rank: int,
) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """The two commuting involutions of U + U + U used for rank-(m_rank)
    sublattices of the first two planes: the first has determinant -1 and
    acts trivially there; the second has determinant +1 and negates there.
    """
    if not 1 <= m_rank <= 3:
        raise WrongRank("the sublattice must have rank 1..3")
    phi = [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 0],
    ]
    psi = [
        [-1, 0, 0, 0, 0, 0],
        [0, -1, 0, 0, 0, 0],
        [0, 0, -1, 0, 0, 0],
        [0, 0, 0, -1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]
    return (
        tuple(tuple(row) for row in phi),
        tuple(tuple(row) for row in psi),
    )


@dataclass
class MirrorReport:
    """Everything the analyzer established about one lattice."""

    input_gram: tuple[tuple[int, ...], ...]
    signature: tuple[int, int]
    determinant: int
    disc_orders: tuple[int, ...]
    simple: Optional[bool]
    condition_diamond: bool
    admits_mirror: bool
    self_mirror: Optional[bool]
    mirror_representative_gram: Optional[tuple[tuple[int, ...], ...]]
    notes: list[str] = field(default_factory=list)


def analyze(lattice: GramLattice, bound: int = 8, cap: int = 512) -> MirrorReport:
    """Full report: invariants, simplicity, mirror admission, self-mirror
    verdict (rank 2), and a concrete mirror representative when the bounded
    search can produce one."""
    _require_hyperbolic(lattice)
    disc = discriminant_form(lattice)
    notes: list[str] = []

    simple = is_simple(lattice, bound)
    if simple is None:
        notes.append(f"isotropy undecided within coordinate bound {bound}")

    diamond = satisfies_condition_diamond(lattice, cap)
    admits = diamond
    if not admits:
        notes.append("no mirror partner exists (rank/discriminant obstruction)")

    self_mirror: Optional[bool] = None
    if lattice.rank == 2:
        self_mirror = has_anti_automorphism(disc)
        if self_mirror:
            witness = construct_anti_automorphism(disc)
            notes.append(
                "anti-automorphism witness columns: "
                + str([list(col) for col in zip(*witness.matrix)])
            )
    else:
        notes.append("self-mirror symmetry is only defined in rank 2")

    representative: Optional[tuple[tuple[int, ...], ...]] = None
    if admits:
        try:
            rep = mirror_ns_representative(lattice, bound, cap)
            representative = rep.gram
        except SearchExhausted:
            notes.append(
                f"mirror representative search exhausted at bound {bound}"
            )
    return MirrorReport(
        input_gram=lattice.gram,
        signature=signature(lattice),
        determinant=determinant(lattice),
        disc_orders=disc.orders,
        simple=simple,
        condition_diamond=diamond,
        admits_mirror=admits,
        self_mirror=self_mirror,
        mirror_representative_gram=representative,
        notes=notes,
    )
