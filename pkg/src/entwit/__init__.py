"""Non-bilocal measurements from shared entangled states, and the witness game they win."""

from .errors import (
    DimensionMismatch,
    EntwitError,
    InconsistentWitness,
    InvalidArgument,
    InvalidDimension,
    InvalidSubsystemSelection,
    NoPptViolation,
    NotADensityState,
    NotAnEffect,
    NotAWitness,
    NotHermitian,
    UncertifiedWitness,
)
from .game import (
    GameReport,
    GameSpec,
    classical_bound,
    decompose_witness,
    payoff_of_effect,
    quantum_payoff,
    simulate,
    verify_separable_ceiling,
)
from .linalg import (
    DensityState,
    Effect,
    Operator,
    eig_hermitian,
    kron,
    partial_trace,
    partial_transpose,
    permute_subsystems,
    transpose_full,
)
from .scheme import (
    SchemeInstance,
    build_scheme,
    sample_outcome,
    werner_identity_check,
    yes_probability_4party,
)
from .separability import (
    Certification,
    Provenance,
    SeparableApproximation,
    Witness,
    closest_separable,
    is_ppt,
    witness_from_ppt,
)
from .states import (
    max_entangled_projector,
    random_density,
    random_product_state,
    random_separable_effect,
    singlet,
    werner,
)

__version__ = "0.1.0"

__all__ = [
    "Certification",
    "DensityState",
    "DimensionMismatch",
    "Effect",
    "EntwitError",
    "GameReport",
    "GameSpec",
    "InconsistentWitness",
    "InvalidArgument",
    "InvalidDimension",
    "InvalidSubsystemSelection",
    "NoPptViolation",
    "NotADensityState",
    "NotAWitness",
    "NotAnEffect",
    "NotHermitian",
    "Operator",
    "Provenance",
    "SchemeInstance",
    "SeparableApproximation",
    "UncertifiedWitness",
    "Witness",
    "build_scheme",
    "classical_bound",
    "closest_separable",
    "decompose_witness",
    "eig_hermitian",
    "is_ppt",
    "kron",
    "max_entangled_projector",
    "partial_trace",
    "partial_transpose",
    "payoff_of_effect",
    "permute_subsystems",
    "quantum_payoff",
    "random_density",
    "random_product_state",
    "random_separable_effect",
    "sample_outcome",
    "simulate",
    "singlet",
    "transpose_full",
    "verify_separable_ceiling",
    "werner",
    "werner_identity_check",
    "witness_from_ppt",
    "yes_probability_4party",
]
