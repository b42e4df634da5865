"""Schmidt canonical forms, their flow-based extraction, and the Bures measure.

A two-qubit pure state reduces under local unitaries to
cos(theta/2)|up,up> + sin(theta/2)|down,down>; for n qubits the canonical form
keeps the all-up component real and dominant, forces the single-flip basis
elements to zero, and fixes all but one residual phase with per-qubit phase
gates. The extraction pipeline follows the local gradient flow to the optimal
separable state, diagonalizes its one-qubit factors, and cleans up phases; an
SVD oracle (n = 2) and an alternating rank-1 tensor oracle (any n) provide
independent ground truth.
"""

import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .flow import (
    FlowConfig,
    FlowConvergenceError,
    is_certified_maximum,
    limiting_state,
    run_flow,
)
from .linalg import hermitian_eig, kron_all, partial_trace
from .states import all_up_state, schmidt_vector_2q, to_density
from .validation import check_qubit_count, check_state_vector, num_qubits

#: lambda_1 must exceed every other coefficient by this to count as dominant.
DOMINANCE_TOL = 1e-9

#: Oracle theta closer than this to pi/2 routes n=2 extraction to the SVD oracle.
NEAR_BELL_MARGIN = 0.05


def schmidt_state_2q(theta):
    """Density matrix of the two-qubit Schmidt state at angle theta in [0, pi].

    Corners cos^2(theta/2) and sin^2(theta/2), off-corners sin(theta)/2,
    zeros elsewhere.
    """
    return to_density(schmidt_vector_2q(theta))


def optimal_fidelity(theta):
    """Maximum fidelity between the Schmidt state at theta and any separable state."""
    if not 0.0 <= theta <= np.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    if theta <= np.pi / 2:
        return float(np.cos(theta / 2.0) ** 2)
    return float(np.sin(theta / 2.0) ** 2)


def bures_entanglement_2q(theta):
    """Bures-distance entanglement 2(1 - sqrt(F*(theta))) of the Schmidt state."""
    return 2.0 * (1.0 - np.sqrt(optimal_fidelity(theta)))


def bures_entanglement_nq(form):
    """Bures-distance entanglement 2(1 - lambda_1) of a canonical form.

    Valid only when lambda_1 strictly dominates the remaining coefficients;
    otherwise the measure is unreliable and a ValueError is raised.
    """
    lam = np.asarray(form.lambdas, dtype=float)
    if len(lam) > 1 and lam[0] - lam[1:].max() <= DOMINANCE_TOL:
        raise ValueError(
            "measure unreliable: lambda_1 does not strictly dominate the "
            "remaining canonical coefficients"
        )
    return 2.0 * (1.0 - float(lam[0]))


def schmidt_oracle_2q(psi):
    """Singular-value oracle for the two-qubit Schmidt angle.

    Reshapes the amplitudes into a 2x2 matrix and reads theta = 2 arccos(s1)
    from the leading singular value; theta lies in [0, pi/2].
    """
    psi = check_state_vector(psi, n=2)
    s = np.linalg.svd(psi.reshape(2, 2), compute_uv=False)
    s1 = min(float(s[0]), 1.0)
    return 2.0 * np.arccos(s1), (s1, float(s[1]))


def max_local_fidelity_2q(psi, phi):
    """Largest |<psi|U|phi>|^2 over local unitaries: (s1 s1' + s2 s2')^2."""
    _, sp = schmidt_oracle_2q(psi)
    _, sq = schmidt_oracle_2q(phi)
    return (sp[0] * sq[0] + sp[1] * sq[1]) ** 2


def rank1_oracle_nq(psi, restarts=16, seed=0, sweeps=500, tol=1e-14):
    """Best product-state overlap by alternating rank-1 tensor approximation.

    Higher-order power iteration with seeded random restarts: each sweep
    re-optimizes one factor against the contraction of the others, which is
    monotone in the overlap. Returns (lambda_1, product_state).
    """
    psi = check_state_vector(psi)
    n = num_qubits(psi.shape[0])
    tensor = psi.reshape((2,) * n)
    rng = np.random.default_rng(seed)

    best_val = -1.0
    best_factors = None
    for _ in range(restarts):
        factors = []
        for _ in range(n):
            f = rng.normal(size=2) + 1j * rng.normal(size=2)
            factors.append(f / np.linalg.norm(f))
        val = 0.0
        for _ in range(sweeps):
            prev = val
            for k in range(n):
                contracted = tensor
                for j in range(n - 1, -1, -1):
                    if j == k:
                        continue
                    contracted = np.tensordot(contracted, factors[j].conj(), axes=([j], [0]))
                nrm = np.linalg.norm(contracted)
                if nrm < 1e-300:
                    break
                factors[k] = contracted / nrm
                val = nrm
            if val - prev < tol:
                break
        if val > best_val:
            best_val = val
            best_factors = [f.copy() for f in factors]

    product = kron_all(f.reshape(2, 1) for f in best_factors).ravel()
    overlap = np.vdot(product, psi)
    product *= np.exp(1j * np.angle(overlap))
    return float(abs(overlap)), product


def missing_basis_indices(n):
    """Indices of the single-flip states forced to zero in the canonical form.

    These are |down,up,...,up>, |up,down,...,up>, ..., i.e. the powers of two
    in decreasing order under the most-significant-first bit convention.
    """
    n = check_qubit_count(n)
    if n < 2:
        raise ValueError("missing basis elements are defined for n >= 2")
    return [2 ** (n - 1 - k) for k in range(n)]


def entanglement_param_count(n):
    """Minimal number of entanglement parameters: 2**(n+1) - 2 - 3n."""
    n = check_qubit_count(n)
    return 2 ** (n + 1) - 2 - 3 * n


@dataclass(frozen=True)
class LocalUnitary:
    """Tensor product of single-qubit unitaries, stored factor by factor."""

    factors: tuple

    def matrix(self):
        return kron_all(self.factors)

    def dagger_matrix(self):
        return kron_all(f.conj().T for f in self.factors)


@dataclass(frozen=True)
class SchmidtForm:
    """Canonical-form record produced by the extraction pipeline.

    ``canonical_state`` is W psi for the local unitary
    W = exp(i global_phase) * (phase gates) * T^dag, where T diagonalizes the
    optimal separable state. ``lambdas`` are the nonnegative canonical
    coefficients (all-up first); for n = 3, ``phase_phi`` is the residual
    phase on the |up,down,down> component.
    """

    n: int
    canonical_state: np.ndarray
    lambdas: tuple
    phase_phi: float | None
    diagonalizer: LocalUnitary
    phase_corrections: tuple  # per-qubit angles
    global_phase: float
    canonical_maximum: bool = True
    oracle_routed: bool = False
    flags: tuple = field(default_factory=tuple)

    @property
    def missing_residual(self):
        """Largest |amplitude| left on the missing basis elements."""
        idx = missing_basis_indices(self.n)
        return float(np.abs(self.canonical_state[idx]).max())


def _phase_fixed_column(v):
    """Scale a vector so its first non-negligible entry is real positive."""
    i = int(np.argmax(np.abs(v) > 1e-12))
    return v * np.exp(-1j * np.angle(v[i]))


def _diagonalizer_from_product(rho_c, n, purity_tol=1e-6):
    """Per-qubit factors T_k whose first column is the top eigenvector of the
    corresponding partial trace, so that T^dag rho_c T = |up...up><up...up|."""
    factors = []
    for k in range(n):
        r = partial_trace(rho_c, k, n)
        r = 0.5 * (r + r.conj().T)
        w, v = hermitian_eig(r)
        if abs(w[1] - 1.0) > purity_tol:
            raise FlowConvergenceError(
                f"critical state is not a product state: qubit {k} reduction has "
                f"eigenvalues {w}",
                None,
            )
        top = _phase_fixed_column(v[:, 1])
        bottom = _phase_fixed_column(v[:, 0])
        factors.append(np.column_stack([top, bottom]))
    return factors


def _designated_indices(n):
    """Components whose phases the per-qubit gates eliminate.

    n = 2: the |down,down> component. n >= 3: the all-down state and its
    single-flip relatives on qubits 1..n-1 (for n = 3 these are the last
    three components), leaving the residual phase on |up,down,...,down>.
    """
    full = 2**n - 1
    if n == 2:
        return [full]
    return [full ^ (2 ** (n - 1 - k)) for k in range(1, n)] + [full]


def _solve_phase_system(psi, n):
    """Per-qubit phase-gate angles making the designated components real nonnegative.

    A phase gate diag(1, e^{i alpha_k}) on qubit k adds alpha_k to every
    component whose k-th bit is down, so the targets form a linear system in
    the alphas (invertible for n >= 3; minimal-norm for the single n = 2
    equation). Components with negligible magnitude are skipped and flagged.
    """
    designated = _designated_indices(n)
    rows = []
    rhs = []
    skipped = []
    for idx in designated:
        if abs(psi[idx]) < 1e-10:
            skipped.append(idx)
            continue
        rows.append([(idx >> (n - 1 - k)) & 1 for k in range(n)])
        rhs.append(-np.angle(psi[idx]))
    if rows:
        alphas, *_ = np.linalg.lstsq(np.array(rows, dtype=float), np.array(rhs), rcond=None)
    else:
        alphas = np.zeros(n)
    return alphas, skipped


def _apply_phase_gates(psi, alphas, n):
    bits = np.array(
        [[(idx >> (n - 1 - k)) & 1 for k in range(n)] for idx in range(2**n)], dtype=float
    )
    return psi * np.exp(1j * (bits @ alphas))


def extract_schmidt(psi, cfg=None):
    """Extract the (generalized) Schmidt canonical form of a pure state.

    Pipeline: run the local gradient flow from |up...up><up...up| with the
    input as target, diagonalize the one-qubit factors of the resulting
    optimal separable state to build the local unitary T, rotate the input by
    T^dag, make the all-up component real positive by a global phase, and
    solve the per-qubit phase-gate system for the designated components.
    Near-maximally-entangled two-qubit inputs (oracle theta within 0.05 of
    pi/2) route to the SVD oracle with a warning, since the flow does not
    converge there. Raises FlowConvergenceError when the flow fails to reach
    a certified maximum.
    """
    psi = check_state_vector(psi, tol=1e-10)
    n = num_qubits(psi.shape[0])
    if n < 2:
        raise ValueError("canonical forms are defined for n >= 2 qubits")
    cfg = cfg or FlowConfig()

    if n == 2:
        theta, _ = schmidt_oracle_2q(psi)
        if abs(theta - np.pi / 2) < NEAR_BELL_MARGIN:
            warnings.warn(
                "input is within 0.05 of maximal entanglement; the flow does not "
                "converge there, using the singular-value oracle instead",
                stacklevel=2,
            )
            return _extract_via_svd(psi)

    rho_i = to_density(all_up_state(n))
    rho_t = to_density(psi)
    trace = run_flow(rho_i, rho_t, cfg=cfg)
    if not is_certified_maximum(trace, rho_i, rho_t):
        raise FlowConvergenceError(
            f"local gradient flow did not reach a certified maximum "
            f"(outcome {trace.outcome}, grad norm {trace.final_grad_norm:.3e})",
            trace,
        )
    rho_c = limiting_state(trace, rho_i)
    factors = _diagonalizer_from_product(rho_c, n)
    return _canonical_form_from_factors(psi, factors, n)


def _extract_via_svd(psi):
    """Canonical form of a two-qubit state from its singular-value decomposition."""
    m = psi.reshape(2, 2)
    u, _, vh = np.linalg.svd(m)
    # psi = sum_i s_i u_i (x) conj(v_i); the factors' first columns are the
    # leading Schmidt vectors of each side.
    t1 = np.column_stack([_phase_fixed_column(u[:, 0]), _phase_fixed_column(u[:, 1])])
    t2 = np.column_stack(
        [_phase_fixed_column(vh[0, :].conj()), _phase_fixed_column(vh[1, :].conj())]
    )
    form = _canonical_form_from_factors(psi, [t1, t2], 2, missing_tol=1e-8)
    return replace(form, oracle_routed=True, flags=form.flags + ("oracle_routed",))


def _canonical_form_from_factors(psi, factors, n, missing_tol=1e-6):
    t_full = kron_all(factors)
    psi_hat = t_full.conj().T @ psi

    lam1 = abs(psi_hat[0])
    if lam1 < 1e-10:
        raise FlowConvergenceError("all-up component vanished after diagonalization", None)
    gamma = -np.angle(psi_hat[0])
    psi_hat = psi_hat * np.exp(1j * gamma)

    alphas, skipped = _solve_phase_system(psi_hat, n)
    psi_canon = _apply_phase_gates(psi_hat, alphas, n)

    flags = []
    if skipped:
        flags.append("vanishing_components_unverified")
    missing = missing_basis_indices(n)
    if np.abs(psi_canon[missing]).max() > missing_tol:
        flags.append("missing_components_nonzero")

    lambdas, phase_phi = _read_canonical_coefficients(psi_canon, n)
    lam = np.asarray(lambdas)
    dominant = len(lam) == 1 or lam[0] - lam[1:].max() > DOMINANCE_TOL
    if not dominant:
        flags.append("non_strict_dominance")

    return SchmidtForm(
        n=n,
        canonical_state=psi_canon,
        lambdas=tuple(float(x) for x in lambdas),
        phase_phi=phase_phi,
        diagonalizer=LocalUnitary(factors=tuple(factors)),
        phase_corrections=tuple(float(a) for a in alphas),
        global_phase=float(gamma),
        canonical_maximum=dominant,
        flags=tuple(flags),
    )


def _read_canonical_coefficients(psi_canon, n):
    """Canonical lambdas (and the n = 3 residual phase) from a cleaned state."""
    if n == 2:
        return (abs(psi_canon[0]), abs(psi_canon[3])), None
    if n == 3:
        phi = float(np.angle(psi_canon[3]) % (2 * np.pi)) if abs(psi_canon[3]) > 1e-12 else 0.0
        lams = (
            abs(psi_canon[0]),
            abs(psi_canon[3]),
            abs(psi_canon[5]),
            abs(psi_canon[6]),
            abs(psi_canon[7]),
        )
        return lams, phi
    # n >= 4: all-up coefficient followed by the phase-fixed designated tail.
    idx = _designated_indices(n)
    return (abs(psi_canon[0]),) + tuple(abs(psi_canon[i]) for i in idx), None
