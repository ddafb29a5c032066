"""Exact principal-minor-equivalence testing with cut-transpose
certificates, rank-one symbolic determinant comparison, and DPP kernel
equivalence."""

from .cuts import (
    brute_force_min_cut,
    cut_function_g,
    cut_transpose,
    is_cut,
    minimal_cut,
    rank_one_factors,
)
from .dpp import dpp_equivalent, subset_probability
from .errors import (
    DimensionMismatch,
    DivisionByZero,
    DuplicatePoint,
    FieldMismatch,
    FieldTooSmall,
    LabelMismatch,
    NotACut,
    NotIrreducible,
    NotSquare,
    PmeqError,
    RankTooHigh,
    TooLarge,
    UnknownLabel,
    ZeroBlock,
)
from .fields import (
    ExtensionField,
    PrimeField,
    RationalField,
    build_extension,
    embed,
    enumerate_points,
)
from .linalg import (
    Matrix,
    UnivariatePoly,
    adjugate,
    determinant,
    inverse,
    lagrange_interpolate,
    poly_matrix_determinant,
    rank,
)
from .pit import (
    RankOnePencil,
    brute_force_pit,
    matroid_intersection_common_base,
    pit_check,
    pit_general,
    pit_homogeneous,
    rank_one_decompose,
)
from .pme import (
    Certificate,
    CertificateBlock,
    Verdict,
    apply_cut_sequence,
    brute_force_pme,
    combine_shifts,
    cycle_weight_oracle,
    finding_cut_sequence,
    min_cut_size_two,
    nonsingular_shift,
    adjugate_entry_shift,
    pme_check,
    verify_certificate,
)
from .structure import (
    BlockDecomposition,
    DiagonalWitness,
    diag_equivalent,
    diag_similar,
    irreducible_blocks,
    partition_compatible,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
