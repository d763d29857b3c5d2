"""Exact-arithmetic mirror-symmetry criteria for even hyperbolic lattices.

The package decides, from a Gram matrix alone, whether a lattice of
signature (1, rank-1) admits a mirror partner, produces concrete partners
via primitive embeddings into a sum of two hyperbolic planes, tests
rank-2 lattices for self-mirror symmetry through anti-automorphisms of
their discriminant forms, and carries the analytic side: volumes and
inverses of complexified Kahler classes and admissibility of period
matrices.  All arithmetic is exact (integers, rationals, Gaussian
rationals); bounded searches refuse honestly instead of guessing.
"""

from .errors import (
    AbmirrorError,
    CapExceeded,
    Degenerate,
    NoAntiAutomorphism,
    NotEven,
    NotSymmetric,
    RefusalError,
    SearchExhausted,
    Unclassifiable,
    ValidationError,
    WrongRank,
    WrongSignature,
)
from .gaussian import GaussianRational
from .lattices import (
    GramLattice,
    determinant,
    direct_sum,
    has_isotropic_vector,
    hyperbolic_plane,
    is_simple,
    make_lattice,
    norm,
    pairing,
    rank_one,
    represents,
    rescale,
    signature,
    smith_decomposition,
)
from .discforms import (
    AntiAutomorphism,
    FiniteQuadraticForm,
    are_anti_isometric,
    are_isometric,
    brute_force_anti_automorphism,
    construct_anti_automorphism,
    discriminant_form,
    evaluate_q,
    group_order,
    has_anti_automorphism,
    is_anti_automorphism,
    make_form,
    sylow_decompose,
)
from .mirrors import (
    EmbeddingWitness,
    MirrorReport,
    admits_mirror_partner,
    analyze,
    are_mirror_partners,
    are_stably_equivalent,
    is_self_mirror,
    is_self_mirror_principally_polarized,
    mirror_ns_representative,
    primitive_embedding_into_2U,
    satisfies_condition_diamond,
    shioda_involutions,
)
from .mukai import (
    ComplexifiedKahlerClass,
    MukaiVector,
    dual_isometry,
    inverse_kahler_class,
    make_kahler_class,
    mukai_exponential,
    mukai_pairing,
    numerical_lattice,
    volume,
)
from .periods import (
    PeriodReport,
    WEDGE_GRAM,
    analyze_period,
    plucker,
    wedge_pairing,
    wedge_to_three_planes,
)

__version__ = "0.1.0"

__all__ = [
    "AbmirrorError",
    "AntiAutomorphism",
    "CapExceeded",
    "ComplexifiedKahlerClass",
    "Degenerate",
    "EmbeddingWitness",
    "FiniteQuadraticForm",
    "GaussianRational",
    "GramLattice",
    "MirrorReport",
    "MukaiVector",
    "NoAntiAutomorphism",
    "NotEven",
    "NotSymmetric",
    "PeriodReport",
    "RefusalError",
    "SearchExhausted",
    "Unclassifiable",
    "ValidationError",
    "WEDGE_GRAM",
    "WrongRank",
    "WrongSignature",
    "admits_mirror_partner",
    "analyze",
    "analyze_period",
    "are_anti_isometric",
    "are_isometric",
    "are_mirror_partners",
    "are_stably_equivalent",
    "brute_force_anti_automorphism",
    "construct_anti_automorphism",
    "determinant",
    "direct_sum",
    "discriminant_form",
    "dual_isometry",
    "evaluate_q",
    "group_order",
    "has_anti_automorphism",
    "has_isotropic_vector",
    "hyperbolic_plane",
    "inverse_kahler_class",
    "is_anti_automorphism",
    "is_self_mirror",
    "is_self_mirror_principally_polarized",
    "is_simple",
    "make_form",
    "make_kahler_class",
    "make_lattice",
    "mirror_ns_representative",
    "mukai_exponential",
    "mukai_pairing",
    "norm",
    "numerical_lattice",
    "pairing",
    "plucker",
    "primitive_embedding_into_2U",
    "rank_one",
    "represents",
    "rescale",
    "satisfies_condition_diamond",
    "shioda_involutions",
    "signature",
    "smith_decomposition",
    "sylow_decompose",
    "volume",
    "wedge_pairing",
    "wedge_to_three_planes",
]
