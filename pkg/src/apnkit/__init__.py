"""apnkit: constructions, equivalence witnesses, and CCZ-invariants for
Gold and Pott-Zhou APN functions over binary fields."""

from .bitmatrix import BitMatrix
from .constructions import (
    PottZhouParams,
    canonicalize,
    count_bounds,
    count_inequivalent,
    enumerate_canonical,
    gold,
    pott_zhou,
)
from .errors import FormatError, ParameterError, SearchTimeout, SelfCheckError
from .gf2m import (
    FieldCtx,
    field_new,
    field_with_modulus,
    gcd_pow2_identities,
    is_irreducible,
    solve_scaled_congruence,
)
from .invariants import (
    InvariantReport,
    aut_l_order,
    aut_orders_quadratic,
    ccz_equivalent,
    gamma_rank,
    graph_aut_order,
)
from .linearized import (
    BivariateLinearMap,
    EAWitness,
    LinearizedPoly,
    gold_m4_binomial_automorphisms,
    gold_m4_case2_exhaustion,
    gold_monomial_automorphisms,
    p_map_is_bijective,
    pz_alpha_witness,
    pz_sign_witness,
    verify_ea_witness,
    witness_from_json,
    witness_to_json,
)
from .vbf import VBF, from_bivariate, from_text, mobius_transform, power_function, read_table, to_text, write_table

__all__ = [
    "BitMatrix",
    "BivariateLinearMap",
    "EAWitness",
    "FieldCtx",
    "FormatError",
    "InvariantReport",
    "LinearizedPoly",
    "ParameterError",
    "PottZhouParams",
    "SearchTimeout",
    "SelfCheckError",
    "VBF",
    "aut_l_order",
    "aut_orders_quadratic",
    "canonicalize",
    "ccz_equivalent",
    "count_bounds",
    "count_inequivalent",
    "enumerate_canonical",
    "field_new",
    "field_with_modulus",
    "from_bivariate",
    "from_text",
    "gamma_rank",
    "gcd_pow2_identities",
    "gold",
    "gold_m4_binomial_automorphisms",
    "gold_m4_case2_exhaustion",
    "gold_monomial_automorphisms",
    "graph_aut_order",
    "is_irreducible",
    "mobius_transform",
    "p_map_is_bijective",
    "pott_zhou",
    "power_function",
    "pz_alpha_witness",
    "pz_sign_witness",
    "read_table",
    "solve_scaled_congruence",
    "to_text",
    "verify_ea_witness",
    "witness_from_json",
    "witness_to_json",
    "write_table",
]

__version__ = "0.1.0"
