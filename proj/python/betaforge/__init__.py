"""Exact arithmetic for algebraic Bieri-Strebel groups.

Subdivision polynomials, caret trees and tree-pair diagrams, exact piecewise
linear maps of [0,1], and machine-checked certificates for nonnegative
representability. All arithmetic is exact; floats appear only on demand.
"""

from ._betaforge import (
    BetaforgeError,
    Context,
    FieldElem,
    MembershipTarget,
    PLMap,
    TreePair,
    apply_matrix,
    boolean_cycle,
    build_matrix,
    check_ftau_relations,
    counterexample_map,
    counterexample_map_arranged,
    decide_nonneg,
    emit_presentation,
    even_root_exclusion,
    exponent_gcd,
    ftau_generator,
    identity_map,
    map_from_breakpoints,
    matrix_power,
    quadratic_tree_pair_defined,
    rational_root,
    run_paper_checks,
    sqrt_membership_quadratic,
    tau_context,
    treepair_from_preorder,
    verify_certificate,
)

__all__ = [
    "BetaforgeError",
    "Context",
    "FieldElem",
    "MembershipTarget",
    "PLMap",
    "TreePair",
    "apply_matrix",
    "boolean_cycle",
    "build_matrix",
    "check_ftau_relations",
    "counterexample_map",
    "counterexample_map_arranged",
    "decide_nonneg",
    "emit_presentation",
    "even_root_exclusion",
    "exponent_gcd",
    "ftau_generator",
    "identity_map",
    "map_from_breakpoints",
    "matrix_power",
    "quadratic_tree_pair_defined",
    "rational_root",
    "run_paper_checks",
    "sqrt_membership_quadratic",
    "tau_context",
    "treepair_from_preorder",
    "verify_certificate",
]
