"""Exact arithmetic in algebras of finite abelian p-groups of bounded rank.

Isomorphism classes are partitions; products count subgroup
configurations; the rank-lowering transfer omega and its section connect
adjacent ranks.  Everything is exact integer arithmetic with built-in
cross-checks.
"""

from .errors import (
    BudgetExceededError,
    HeckeError,
    ParseError,
    VerificationError,
)
from .hecke import (
    GeneratorPoly,
    HeckeContext,
    HeckeElement,
    basis_element,
    c_coeff,
    decompose_in_generators,
    eval_generator_poly,
    identity,
    multiply,
    parse_element,
    t_aggregate,
)
from .omega import (
    HomReport,
    OmegaContext,
    TpReport,
    a_coeff,
    b_coeff,
    i_count,
    j_count,
    lift_section,
    omega,
    verify_omega_hom,
    verify_tp_formula,
)
from .partitions import (
    Partition,
    conjugate,
    embeds,
    format_partition,
    order_exponent,
    p_rank,
    parse_partition,
    partitions_of_exponent,
    partitions_up_to,
    torsion_type,
)
from .subgroups import (
    DEFAULT_BUDGET,
    Ambient,
    SubgroupRep,
    count_of_type_in_group,
    enumerate_subgroups,
    intersect,
    m_count,
    quotient_type,
    standard_split,
    subgroup_from_rows,
    type_of,
)

__version__ = "0.1.0"

__all__ = [
    "Ambient",
    "BudgetExceededError",
    "DEFAULT_BUDGET",
    "GeneratorPoly",
    "HeckeContext",
    "HeckeElement",
    "HeckeError",
    "HomReport",
    "OmegaContext",
    "ParseError",
    "Partition",
    "SubgroupRep",
    "TpReport",
    "VerificationError",
    "a_coeff",
    "b_coeff",
    "basis_element",
    "c_coeff",
    "conjugate",
    "count_of_type_in_group",
    "decompose_in_generators",
    "embeds",
    "enumerate_subgroups",
    "eval_generator_poly",
    "format_partition",
    "i_count",
    "identity",
    "intersect",
    "j_count",
    "lift_section",
    "m_count",
    "multiply",
    "omega",
    "order_exponent",
    "p_rank",
    "parse_element",
    "parse_partition",
    "partitions_of_exponent",
    "partitions_up_to",
    "quotient_type",
    "standard_split",
    "subgroup_from_rows",
    "t_aggregate",
    "torsion_type",
    "type_of",
    "verify_omega_hom",
    "verify_tp_formula",
    "__version__",
]
