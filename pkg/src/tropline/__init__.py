"""Exact computations with tropical compactifications, toric divisors and b-divisors."""
from .bdivisors import (
    CartierBDivisor,
    ModelTower,
    MonomialIdeal,
    determined_on,
    is_nef,
    is_relatively_nef,
    nef_envelope,
    pull_back,
    push_forward,
    z_of_ideal,
)
from .divisors import (
    CartierData,
    PLFunction,
    ToricDivisor,
    cartier_data,
    div_char,
    intersect_curve,
    is_principal,
    local_sections,
    numerically_trivial,
    polytope,
    pullback,
    support_function,
)
from .errors import (
    ConeNotInFan,
    DimensionMismatch,
    DimensionZeroPolytope,
    EmptyPolytope,
    FunctionNotLinearOnCone,
    IncomparableModels,
    Infeasible,
    NonSimplicialFan,
    NotAFacetPair,
    NotAFan,
    NotARefinement,
    NotAWall,
    NotCartier,
    PreconditionError,
    SchemaError,
    TroplineError,
    UnbalancedInput,
    UnboundedOnSupport,
    UnderdeterminedWarning,
    WrongCodimension,
    ZeroVector,
)
from .fan import (
    Fan,
    RationalComplex,
    cone_over_complex,
    is_unimodular,
    lateral_generator,
    primitive,
    quotient_by_cone,
    refines,
    star_subdivide,
    support_membership,
    unimodularize,
)
from .line_bundles import (
    StrataWeights,
    admissible_sets,
    blowup_compatibility,
    divisor_from_weights,
    weights_from_divisor,
)
from .polyhedra import LatticePolytope
from .tropical import LaurentSupport, check_tropical_support, newton_polytope, tropicalize
from .weights import (
    MinkowskiWeight,
    MixedWeight,
    WeightedFan,
    degree,
    divisor_to_weight,
    is_balanced,
    kappa,
    lifts,
    strata_equivalent,
    support,
)

__version__ = "0.1.0"

__all__ = [
    "CartierBDivisor",
    "CartierData",
    "ConeNotInFan",
    "DimensionMismatch",
    "DimensionZeroPolytope",
    "EmptyPolytope",
    "Fan",
    "FunctionNotLinearOnCone",
    "IncomparableModels",
    "Infeasible",
    "LatticePolytope",
    "LaurentSupport",
    "MinkowskiWeight",
    "MixedWeight",
    "ModelTower",
    "MonomialIdeal",
    "NonSimplicialFan",
    "NotAFacetPair",
    "NotAFan",
    "NotARefinement",
    "NotAWall",
    "NotCartier",
    "PLFunction",
    "PreconditionError",
    "RationalComplex",
    "SchemaError",
    "StrataWeights",
    "ToricDivisor",
    "TroplineError",
    "UnbalancedInput",
    "UnboundedOnSupport",
    "UnderdeterminedWarning",
    "WeightedFan",
    "WrongCodimension",
    "ZeroVector",
    "admissible_sets",
    "blowup_compatibility",
    "cartier_data",
    "check_tropical_support",
    "cone_over_complex",
    "degree",
    "determined_on",
    "div_char",
    "divisor_from_weights",
    "divisor_to_weight",
    "intersect_curve",
    "is_balanced",
    "is_nef",
    "is_principal",
    "is_relatively_nef",
    "is_unimodular",
    "kappa",
    "lateral_generator",
    "lifts",
    "local_sections",
    "nef_envelope",
    "newton_polytope",
    "numerically_trivial",
    "polytope",
    "primitive",
    "pull_back",
    "pullback",
    "push_forward",
    "quotient_by_cone",
    "refines",
    "star_subdivide",
    "strata_equivalent",
    "support",
    "support_function",
    "support_membership",
    "tropicalize",
    "unimodularize",
    "weights_from_divisor",
    "z_of_ideal",
]
