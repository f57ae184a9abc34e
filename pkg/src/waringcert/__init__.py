"""Exact certificates of minimality and uniqueness for Waring
decompositions of ternary forms, over a configurable prime field."""

__version__ = "0.1.0"

from .ffield import (
    DEFAULT_PRIME,
    DenseMatrix,
    PrimeContext,
    is_prime,
    kernel_basis,
    rank,
    solve,
)
from .polys import (
    GradedPoly,
    MonomialBasis,
    ParamPoly,
    det_poly,
    monomial_basis,
    mult_map,
    poly_eval,
    veronese_vector,
)
from .points import (
    HilbertProfile,
    PointSet,
    cap_formula_dim,
    cb_check,
    evaluation_matrix,
    h1_defect,
    hilbert_profile,
    ideal_piece,
    kruskal_rank,
    kruskal_rank_detail,
    span_intersection_dim,
)
from .criteria import (
    Certificate,
    Instance,
    mo_certify,
    range_certify,
    ranger_certify,
    reshaped_kruskal_certify,
)
from .octic14 import (
    FULL,
    HilbertBurch,
    Octic14Report,
    PAPER13,
    ResidualFamily,
    certify_octic14,
    check_preconditions,
    hilbert_burch,
    normalization_check,
    residual_family,
    second_decomposition_system,
    unique_quartic,
    verify_witness,
)
from .generate import (
    GeneratedInstance,
    gen_identifiable,
    gen_unidentifiable,
    random_admissible_pointset,
    recover_residual_points,
)
from .driver import run_criteria

__all__ = [
    "DEFAULT_PRIME",
    "DenseMatrix",
    "PrimeContext",
    "is_prime",
    "kernel_basis",
    "rank",
    "solve",
    "GradedPoly",
    "MonomialBasis",
    "ParamPoly",
    "det_poly",
    "monomial_basis",
    "mult_map",
    "poly_eval",
    "veronese_vector",
    "HilbertProfile",
    "PointSet",
    "cap_formula_dim",
    "cb_check",
    "evaluation_matrix",
    "h1_defect",
    "hilbert_profile",
    "ideal_piece",
    "kruskal_rank",
    "kruskal_rank_detail",
    "span_intersection_dim",
    "Certificate",
    "Instance",
    "mo_certify",
    "range_certify",
    "ranger_certify",
    "reshaped_kruskal_certify",
    "FULL",
    "PAPER13",
    "HilbertBurch",
    "Octic14Report",
    "ResidualFamily",
    "certify_octic14",
    "check_preconditions",
    "hilbert_burch",
    "normalization_check",
    "residual_family",
    "second_decomposition_system",
    "unique_quartic",
    "verify_witness",
    "GeneratedInstance",
    "gen_identifiable",
    "gen_unidentifiable",
    "random_admissible_pointset",
    "recover_residual_points",
    "run_criteria",
]
