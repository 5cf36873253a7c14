"""Generalized Pauli channels: construction, capacity bounds, dynamics."""

from .capacity import (
    CapacityBounds,
    ZetaComponents,
    capacity_bounds,
    capacity_from_fidelity,
    channel_fidelity_extremes,
    classical_capacity_exact,
    holevo_lower_bound,
    holevo_lower_via_classical,
    holevo_upper_bound,
    holevo_upper_bound_weyl,
    pauli_classical_capacity,
    zeta_components_p_form,
    zeta_vector,
)
from .channels import (
    EigenvalueVector,
    GeneralizedPauliChannel,
    WeylChannel,
    apply,
    apply_weyl,
    canonical_mub,
    channel_from_json,
    channel_to_json,
    choi_matrix,
    classical_map_t,
    eigenvalues_from_probabilities,
    fujiwara_algoet_margin,
    gpc_to_weyl,
    is_completely_positive,
    kraus_probability_multiset,
    probabilities_from_eigenvalues,
    require_cp,
    tensor,
    weyl_kraus_terms,
)
from .dynamics import (
    PauliTrajectory,
    RateSpec,
    capacity_trajectory,
    eigenvalue_trajectory,
    non_p_divisible_capacity_witness,
    ode_eigenvalue_oracle,
    p_divisibility_check,
)
from .errors import (
    InvalidDistributionError,
    InvalidStateError,
    NotCompletelyPositiveError,
    UnsupportedDimensionError,
)
from .mub import (
    MubSet,
    WeylOperator,
    build_mubs_dim4,
    build_mubs_prime,
    check_weyl_correspondence,
    is_prime,
    unitary_u,
    verify_mub,
    weyl_operator,
)
from .numerics import (
    check_density_matrix,
    hermitian_eigenvalues,
    majorizes,
    shannon_entropy,
    von_neumann_entropy,
)
from .oracle import (
    AdditivityReport,
    SearchConfig,
    additivity_report,
    cp_oracle_choi,
    holevo_estimate,
    min_output_entropy,
)
from .selfcheck import run_formula_suite

__version__ = "0.1.0"

__all__ = [
    "AdditivityReport",
    "CapacityBounds",
    "EigenvalueVector",
    "GeneralizedPauliChannel",
    "InvalidDistributionError",
    "InvalidStateError",
    "MubSet",
    "NotCompletelyPositiveError",
    "PauliTrajectory",
    "RateSpec",
    "SearchConfig",
    "UnsupportedDimensionError",
    "WeylChannel",
    "WeylOperator",
    "ZetaComponents",
    "additivity_report",
    "apply",
    "apply_weyl",
    "build_mubs_dim4",
    "build_mubs_prime",
    "canonical_mub",
    "capacity_bounds",
    "capacity_from_fidelity",
    "capacity_trajectory",
    "channel_fidelity_extremes",
    "channel_from_json",
    "channel_to_json",
    "check_density_matrix",
    "check_weyl_correspondence",
    "choi_matrix",
    "classical_capacity_exact",
    "classical_map_t",
    "cp_oracle_choi",
    "eigenvalue_trajectory",
    "eigenvalues_from_probabilities",
    "fujiwara_algoet_margin",
    "gpc_to_weyl",
    "hermitian_eigenvalues",
    "holevo_estimate",
    "holevo_lower_bound",
    "holevo_lower_via_classical",
    "holevo_upper_bound",
    "holevo_upper_bound_weyl",
    "is_completely_positive",
    "is_prime",
    "kraus_probability_multiset",
    "majorizes",
    "min_output_entropy",
    "non_p_divisible_capacity_witness",
    "ode_eigenvalue_oracle",
    "p_divisibility_check",
    "pauli_classical_capacity",
    "probabilities_from_eigenvalues",
    "require_cp",
    "run_formula_suite",
    "shannon_entropy",
    "tensor",
    "unitary_u",
    "verify_mub",
    "von_neumann_entropy",
    "weyl_kraus_terms",
    "weyl_operator",
    "zeta_components_p_form",
    "zeta_vector",
]
