"""Fractional-order Pascal difference operator toolkit.

Infinite lower-triangular operator algebra around the product of the Pascal
mean with a real-order difference triangle: entry evaluation, composition
and truncation, the induced sequence transforms and their inverse,
expansion vectors with partial-sum reconstruction, truncated weighted
norms, and dual-set condition statistics.  A CLI (``frakpascal``) surfaces
truncations, transforms, norms and verification suites.

Arithmetic is generic: integer and ``fractions.Fraction`` data stay exact,
floats use compensated summation.
"""

from .coeffs import (
    CoeffTable,
    FracOrder,
    OrderError,
    coeff_table,
    delta_entry,
    delta_inv_entry,
    frac_binom,
    pascal_entry,
    pascal_inv_entry,
)
from .duals import (
    ConditionReport,
    SubsetBudgetError,
    alpha_matrix,
    beta_matrix,
    dual_membership_report,
    stat_column_limits,
    stat_row_qsum_sup,
    stat_subset_sup_l1,
)
from .operators import (
    DenseTriangle,
    TriangularOperator,
    compose,
    delta_inv_operator,
    delta_operator,
    identity_operator,
    identity_residual,
    identity_residual_between,
    pascal_inv_operator,
    pascal_operator,
    phat_entry,
    phat_inv_entry,
    phat_inv_operator,
    phat_operator,
    truncate,
)
from .spaces import (
    PExponent,
    absoluteness_gap,
    inclusion_bound,
    p_norm,
    parallelogram_gap,
    phat_norm,
)
from .transform import (
    BasisVector,
    FiniteSequence,
    apply,
    basis_vector,
    inverse_apply,
    reconstruct,
)

__version__ = "0.1.0"

__all__ = [
    "BasisVector",
    "CoeffTable",
    "ConditionReport",
    "DenseTriangle",
    "FiniteSequence",
    "FracOrder",
    "OrderError",
    "PExponent",
    "SubsetBudgetError",
    "TriangularOperator",
    "absoluteness_gap",
    "alpha_matrix",
    "apply",
    "basis_vector",
    "beta_matrix",
    "coeff_table",
    "compose",
    "delta_entry",
    "delta_inv_entry",
    "delta_inv_operator",
    "delta_operator",
    "dual_membership_report",
    "frac_binom",
    "identity_operator",
    "identity_residual",
    "identity_residual_between",
    "inclusion_bound",
    "inverse_apply",
    "p_norm",
    "parallelogram_gap",
    "pascal_entry",
    "pascal_inv_entry",
    "pascal_inv_operator",
    "pascal_operator",
    "phat_entry",
    "phat_inv_entry",
    "phat_inv_operator",
    "phat_norm",
    "phat_operator",
    "reconstruct",
    "stat_column_limits",
    "stat_row_qsum_sup",
    "stat_subset_sup_l1",
    "truncate",
]
