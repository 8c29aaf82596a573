"""Exact arithmetic for p-adic tiling and spectral-set questions.

Everything downstream of the scalar layer is decided over the rationals and
the cyclotomic integers; floating point never enters an equality check.
"""

from .copen import (
    CompactOpenSet,
    EmptySet,
    ScaledCyclotomic,
    autocorrelation,
    frame_branching_set,
    indicator_fourier,
    is_p_homogeneous,
    local_constancy_parameter,
    normalize_set,
)
from .cyclotomic import (
    CyclotomicSum,
    NotIndicator,
    NotVanishing,
    decompose_vanishing,
    vanishing_level_set,
)
from .decide import (
    Census,
    CensusRow,
    ConstructionFailed,
    DigitSet,
    EquivalenceViolation,
    ScopeTooLarge,
    Witness,
    WitnessKind,
    classify_all,
    complement_from_homogeneity,
    homogeneous_census_size,
    is_spectral_zmod,
    is_tile_zmod,
    spectrum_from_homogeneity,
    spectrum_orthogonality_defect,
    verify_spectrum_witness,
    verify_tiling_witness,
)
from .padic import (
    Ball,
    BallRelation,
    INF,
    PAdicScalar,
    PrimeContext,
    RootOfUnity,
    ball_member,
    ball_relation,
    character,
    frac_part,
    valuation,
)
from .pairs import (
    Failure,
    NotASpectrumEvidence,
    PairReport,
    SphereStatus,
    UniformDiscreteSet,
    WindowTooSmall,
    density,
    l_truncation,
    lifted_spectrum,
    lifted_tiling_complement,
    n_f_of,
    spectrum_to_tiling_complement,
    uniformity_check,
    verify_spectral_pair,
    verify_tiling_pair,
    zero_bound_check,
    zero_sphere_scan,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "Ball",
    "BallRelation",
    "Census",
    "CensusRow",
    "CompactOpenSet",
    "ConstructionFailed",
    "CyclotomicSum",
    "DigitSet",
    "EmptySet",
    "EquivalenceViolation",
    "Failure",
    "NotASpectrumEvidence",
    "NotIndicator",
    "NotVanishing",
    "PAdicScalar",
    "PairReport",
    "PrimeContext",
    "RootOfUnity",
    "ScaledCyclotomic",
    "ScopeTooLarge",
    "SphereStatus",
    "UniformDiscreteSet",
    "WindowTooSmall",
    "Witness",
    "WitnessKind",
    "autocorrelation",
    "ball_member",
    "ball_relation",
    "character",
    "classify_all",
    "complement_from_homogeneity",
    "decompose_vanishing",
    "density",
    "frac_part",
    "frame_branching_set",
    "homogeneous_census_size",
    "indicator_fourier",
    "is_p_homogeneous",
    "is_spectral_zmod",
    "is_tile_zmod",
    "l_truncation",
    "lifted_spectrum",
    "lifted_tiling_complement",
    "local_constancy_parameter",
    "n_f_of",
    "normalize_set",
    "spectrum_from_homogeneity",
    "spectrum_orthogonality_defect",
    "spectrum_to_tiling_complement",
    "uniformity_check",
    "vanishing_level_set",
    "valuation",
    "verify_spectral_pair",
    "verify_spectrum_witness",
    "verify_tiling_pair",
    "verify_tiling_witness",
    "zero_bound_check",
    "zero_sphere_scan",
]
