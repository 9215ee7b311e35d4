"""Balanced splits of Hadamard matrices: constructions, feasibility
screens, and the association schemes they generate."""

from .core import (
    HadamardMatrix,
    HadsplitError,
    IntMatrix,
    ParseError,
    SkewCore,
    conference_from_core,
    kronecker,
    normalize,
    paley_skew_core,
    parse_matrix,
    serialize_matrix,
    sylvester,
)
from .gf import GF, NotPrimePower, is_prime_power
from .splitting import (
    BoundInapplicable,
    BudgetExceeded,
    EquiangularReport,
    InfeasibleSeidel,
    InvalidSingleValue,
    MissingAllOnesRow,
    NonIntegral,
    NotDiagonalized,
    NotSplittable,
    NotUnbiasedCase,
    SeidelDerivation,
    SplitParams,
    SplitReport,
    SrgParams,
    WrongParameters,
    check_split,
    classify_srg16,
    complement_split,
    delete_allones_transform,
    derive_seidel,
    derive_srg_case_a,
    derive_srg_case_b,
    diagonalize_by_hadamard,
    equiangular_report,
    general_srg_from_b,
    regular_hadamard_normalize,
    search_splits,
    split_from_diagonalizable_srg,
    unbiased_partner,
    verify_seidel_matrix,
)
from .constructions import (
    BshInstance,
    JaPair,
    TwinSplit,
    core_tensor,
    gram_construction,
    ja_recursion,
    kron_square,
    skew_core_bsh,
    translate_sylvester_rows,
    twin_sylvester,
    two_row_split,
    witness_for,
)
from .feasibility import (
    EigvecSearchResult,
    FeasibleRow,
    MultiplicityMismatch,
    eigvec_search,
    enumerate_case_a,
    enumerate_seidel,
    filter_mod4_diff,
    filter_mod4_sum,
    solve_sign_pattern,
    srg_multiplicities,
    srg_primitive_feasible,
)
from .latin import (
    LatinSquare,
    NotUfs,
    OddOrder,
    affine_ufs_family,
    circle_symmetric,
    compose_ufs,
    force_constant_diagonal,
    is_mutually_ufs,
    is_ufs,
    parse_latin,
    serialize_latin,
    with_min_symbol,
)
from .schemes import (
    AuxiliarySet,
    AxiomFailure,
    EigenTables,
    IrrationalEigenvalue,
    OddityViolation,
    Scheme,
    build_4class_nonsymmetric,
    build_4class_symmetric,
    build_5class,
    build_6class,
    eigenmatrices,
    hamming_scheme,
    lift_latin,
    muzychuk_fusion,
    table_as_ints,
    verify_scheme,
)

__version__ = "0.1.0"
