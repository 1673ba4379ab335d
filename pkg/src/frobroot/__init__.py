"""Frobenius root ideals, HSL numbers and F-injective loci over prime fields."""

from .frobenius import RootDecomposition, frobenius_power, ie_operator, pe_root_decompose
from .hslstrat import (
    Chart,
    ChainPersistenceError,
    CoverIncomplete,
    HSLChain,
    NoChart,
    PresentedAlgebra,
    Stratification,
    UNotInModule,
    cover_from_generators,
    f_injective_locus,
    frobenius_module_generators,
    generator_cover,
    hsl_chain,
    local_hsl,
    strata_ideals,
    stratify,
)
from .idealops import (
    Ideal,
    PolyMatrix,
    SyzygyBasis,
    ideal_colon,
    ideal_equal,
    ideal_intersection,
    ideal_member,
    ideal_saturation,
    ideal_sum,
    minors_ideal,
    normal_form,
    radical_membership,
    reduced_gb,
    syzygies,
)
from .ringcore import (
    ContextMismatch,
    ExponentOverflow,
    Polynomial,
    PolynomialSyntaxError,
    RingContext,
    format_polynomial,
    parse_polynomial,
    poly_arith,
)

__version__ = "0.1.0"

__all__ = [
    "ChainPersistenceError",
    "Chart",
    "ContextMismatch",
    "cover_from_generators",
    "CoverIncomplete",
    "ExponentOverflow",
    "f_injective_locus",
    "format_polynomial",
    "frobenius_module_generators",
    "frobenius_power",
    "generator_cover",
    "hsl_chain",
    "HSLChain",
    "Ideal",
    "ideal_colon",
    "ideal_equal",
    "ideal_intersection",
    "ideal_member",
    "ideal_saturation",
    "ideal_sum",
    "ie_operator",
    "local_hsl",
    "minors_ideal",
    "NoChart",
    "normal_form",
    "parse_polynomial",
    "pe_root_decompose",
    "poly_arith",
    "PolyMatrix",
    "Polynomial",
    "PolynomialSyntaxError",
    "PresentedAlgebra",
    "radical_membership",
    "reduced_gb",
    "RingContext",
    "RootDecomposition",
    "strata_ideals",
    "Stratification",
    "stratify",
    "syzygies",
    "SyzygyBasis",
    "UNotInModule",
]
