"""cliffdfs: exact construction and verification of decoherence-free subspaces.

The exact layer (Gaussian-rational multivectors over tensor powers of Cl3,
closed subalgebra tables, character tables, projectors) never touches
floats; the verification layer maps everything through (+/-)Pauli sign
representations and checks the orthogonality and unitarization statements
numerically.
"""

from .algebra import (
    Blade,
    Multivector,
    blade_product,
    encode_qubit,
    factor_blade_product,
    gamma_blade,
    idempotent_eps,
    into_ideal,
    is_ideal_element,
    mv_add,
    mv_multiply,
    mv_scale,
    mv_tensor,
)
from .dfs import (
    CharacterProjector,
    DfsComponent,
    DfsReport,
    EigenvalueSum,
    NoiseOperator,
    build_projectors,
    column_is_zero,
    column_ratio,
    dfs_analyze,
    eigen_check,
    exact_state_column,
    matrix_oracle_check,
    project_state,
)
from .linalg import ExactMatrix, exact_determinant, hermitian_eig, inv_sqrt_diag
from .parsing import ParseError, parse_element, parse_scalar, render_element
from .reptheory import (
    CharacterTable,
    MatrixRep,
    SignRep,
    all_sign_reps,
    character_orthogonality_exact,
    character_table_abelian,
    distinguish_reps,
    matrix_element_projector,
    sign_rep_matrices,
    unitarize,
    verify_grand_orthogonality,
)
from .scalars import GaussianRational, format_scalar
from .structure import (
    IrrepProfile,
    SubalgebraTable,
    center_basis,
    check_coefficient_condition,
    close_generators,
    dual_numbers_table,
    full_clifford_table,
    gram_matrix,
    irrep_profile,
    is_semisimple,
    tensor_tables,
    trivial_table,
)

__version__ = "0.1.0"
