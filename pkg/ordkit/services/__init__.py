"""Services layer - Everything that needs the order on terms.

Services operate on the immutable domain values and never touch stdin or
stdout; the CLI and the tests are their only callers.
"""

from .order_service import cmp, lt, leq, max_term, sort_terms, theta_set, ceiling
from .validation_service import validate, is_normal_form
from .enumeration_service import enumerate_below
from .arithmetic_service import (
    OMEGA,
    add,
    mul_nat,
    omega_mul,
    principal_mul,
    wexp,
    omega_tower,
    veblen,
    normalize,
)
from .hull_service import (
    in_hull,
    hull_clause,
    nf_valid,
    psi_reg,
    psi_i,
    psi_k,
    resolvent_descriptor,
)
from .mahlo_service import (
    lh,
    component,
    end_segment,
    kset_seq,
    bullet_sub,
    seq_less,
    seq_leq_ord,
    lift,
    unlift,
    abgam,
    mh_descriptor,
    mh_subsumes,
)
from .formula_service import (
    k_e,
    k_r,
    k_all,
    rk_l,
    rank,
    classify,
    relativize,
    relativization_side_conditions,
    literal_truth,
    assign_shape,
    components,
    substitute,
    substitute_second,
    validate_formula,
)
from .bound_service import (
    embedding_bound,
    predicative_elim,
    collapse_step,
    lower_mahlo,
    weaken,
    side_condition_vee,
    mahlo_gap_ok,
    theorem1_trace,
    theorem2_trace,
)
from .check_service import FormulaGenerator, PropertyChecker

__all__ = [
    "cmp",
    "lt",
    "leq",
    "max_term",
    "sort_terms",
    "theta_set",
    "ceiling",
    "validate",
    "is_normal_form",
    "enumerate_below",
    "OMEGA",
    "add",
    "mul_nat",
    "omega_mul",
    "principal_mul",
    "wexp",
    "omega_tower",
    "veblen",
    "normalize",
    "in_hull",
    "hull_clause",
    "nf_valid",
    "psi_reg",
    "psi_i",
    "psi_k",
    "resolvent_descriptor",
    "lh",
    "component",
    "end_segment",
    "kset_seq",
    "bullet_sub",
    "seq_less",
    "seq_leq_ord",
    "lift",
    "unlift",
    "abgam",
    "mh_descriptor",
    "mh_subsumes",
    "k_e",
    "k_r",
    "k_all",
    "rk_l",
    "rank",
    "classify",
    "relativize",
    "relativization_side_conditions",
    "literal_truth",
    "assign_shape",
    "components",
    "substitute",
    "substitute_second",
    "validate_formula",
    "embedding_bound",
    "predicative_elim",
    "collapse_step",
    "lower_mahlo",
    "weaken",
    "side_condition_vee",
    "mahlo_gap_ok",
    "theorem1_trace",
    "theorem2_trace",
    "FormulaGenerator",
    "PropertyChecker",
]
