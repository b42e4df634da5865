"""Gradient flow over single-qubit unitaries on multi-qubit pure states.

Analyze the fidelity landscape under local (single-qubit) unitary
transformations, extract (generalized) Schmidt canonical forms by following
the local gradient flow, and compute the Bures-distance entanglement measure.
"""

from .estimators import LocalGradientAscent, SchmidtCanonicalizer
from .flow import (
    CONVERGED_MAX,
    CONVERGED_SADDLE,
    MAX_STEPS,
    STALLED,
    FlowConfig,
    FlowConvergenceError,
    FlowTrace,
    classify_endpoint,
    flow_step,
    is_certified_maximum,
    limiting_state,
    run_flow,
)
from .landscape import (
    HessianSpectrum,
    bracket0,
    classify_signature,
    critical_residual,
    fidelity,
    gradient_full,
    gradient_local,
    hessian_matrix_local,
    hessian_quadratic,
    hessian_spectrum_schmidt_pair,
    hessian_spectrum_submanifold,
    local_hessian_matrix,
    local_tangent_basis,
    project_local,
)
from .linalg import (
    SIGMA0,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    SIGMAS,
    expm_antihermitian,
    hermitian_eig,
    kron,
    partial_trace,
    pauli_coefficients,
    pauli_string,
    purity,
)
from .schmidt import (
    LocalUnitary,
    SchmidtForm,
    bures_entanglement_2q,
    bures_entanglement_nq,
    entanglement_param_count,
    extract_schmidt,
    max_local_fidelity_2q,
    missing_basis_indices,
    optimal_fidelity,
    rank1_oracle_nq,
    schmidt_oracle_2q,
    schmidt_state_2q,
)
from .states import (
    all_up_state,
    basis_state,
    ghz_state,
    pauli_rotation,
    product_state,
    random_local_unitary,
    random_product_state,
    random_state,
    schmidt_vector_2q,
    to_density,
)

__version__ = "0.1.0"

__all__ = [
    "CONVERGED_MAX",
    "CONVERGED_SADDLE",
    "FlowConfig",
    "FlowConvergenceError",
    "FlowTrace",
    "HessianSpectrum",
    "LocalGradientAscent",
    "LocalUnitary",
    "MAX_STEPS",
    "STALLED",
    "SIGMA0",
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "SIGMAS",
    "SchmidtCanonicalizer",
    "SchmidtForm",
    "all_up_state",
    "basis_state",
    "bracket0",
    "bures_entanglement_2q",
    "bures_entanglement_nq",
    "classify_endpoint",
    "classify_signature",
    "critical_residual",
    "entanglement_param_count",
    "expm_antihermitian",
    "extract_schmidt",
    "fidelity",
    "flow_step",
    "ghz_state",
    "gradient_full",
    "gradient_local",
    "hermitian_eig",
    "hessian_matrix_local",
    "hessian_quadratic",
    "hessian_spectrum_schmidt_pair",
    "hessian_spectrum_submanifold",
    "is_certified_maximum",
    "kron",
    "limiting_state",
    "local_hessian_matrix",
    "local_tangent_basis",
    "max_local_fidelity_2q",
    "missing_basis_indices",
    "optimal_fidelity",
    "partial_trace",
    "pauli_coefficients",
    "pauli_rotation",
    "pauli_string",
    "product_state",
    "project_local",
    "purity",
    "random_local_unitary",
    "random_product_state",
    "random_state",
    "rank1_oracle_nq",
    "run_flow",
    "schmidt_oracle_2q",
    "schmidt_state_2q",
    "schmidt_vector_2q",
    "to_density",
]
