"""Local gradient flow dU/ds = U P[U^dag rho0 U, rho_T] with exact retraction.

First-order explicit steps: each increment exponentiates the projected
gradient, which lives in the single-qubit subalgebra, so the retraction is a
Kronecker product of closed-form 2x2 exponentials and the iterate stays a
local unitary to machine precision. A backtracking line search keeps the
fidelity non-decreasing; converged endpoints are classified through the local
Hessian, and random local kicks (seeded) escape saddle points.
"""

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .landscape import (
    CRITICAL_GRAD_NORM,
    SIGNATURE_TOL,
    assemble_local,
    classify_signature,
    gradient_full,
    gradient_local_coefficients,
    local_hessian_matrix,
    local_norm,
    local_tangent_basis,
)
from .linalg import SIGMA0, SIGMAS, expm_antihermitian, hermitian_eig, kron_all
from .validation import (
    check_density_matrix,
    check_same_dimension,
    check_unitary,
    num_qubits,
)

CONVERGED_MAX = "converged_max"
CONVERGED_SADDLE = "converged_saddle"
STALLED = "stalled"
MAX_STEPS = "max_steps"

#: Accepted steps may lower the fidelity by at most this much (roundoff slack).
ACCEPT_SLACK = 1e-12

#: Consecutive accepted steps whose total improvement below STALL_IMPROVEMENT stalls the run.
STALL_WINDOW = 200
STALL_IMPROVEMENT = 1e-14

#: Zero modes of the endpoint Hessian that displace the critical state by more
#: than this (Frobenius) demote a "maximum" signature to a degenerate outcome.
MOVING_MODE_TOL = 1e-6

MAX_KICKS = 5

#: Kick amplitudes escalate geometrically: a fixed tiny kick cannot escape a
#: quartically flat critical region (e.g. an antipodal start) inside the stall
#: window, while the first small kick already suffices at ordinary saddles.
KICK_GROWTH = 8.0
KICK_CAP = 0.5


@dataclass
class FlowConfig:
    """Step control and termination settings for a flow run."""

    step: float = 0.5
    max_steps: int = 20000
    grad_tol: float = 1e-10
    backtrack_factor: float = 0.5
    kick_amplitude: float = 1e-3
    seed: int = 0
    enable_kicks: bool = True

    def __post_init__(self):
        if self.step <= 0 or self.max_steps <= 0 or self.grad_tol <= 0:
            raise ValueError("step, max_steps and grad_tol must be positive")
        if not 0.0 < self.backtrack_factor < 1.0:
            raise ValueError("backtrack_factor must lie in (0, 1)")
        if self.kick_amplitude <= 0:
            raise ValueError("kick_amplitude must be positive")


@dataclass
class FlowTrace:
    """Result of a flow run: sampled (s, fidelity, grad_norm) and the endpoint."""

    samples: list = field(default_factory=list)
    outcome: str = MAX_STEPS
    final_unitary: np.ndarray | None = None
    kicks_used: int = 0

    @property
    def final_fidelity(self):
        return self.samples[-1][1]

    @property
    def final_grad_norm(self):
        return self.samples[-1][2]


class FlowConvergenceError(RuntimeError):
    """Raised when a pipeline requires a certified maximum but the flow found none."""

    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace


def _local_exponential(g, n, scale=1.0):
    """exp(scale * sum_{k,j} i g[k,j] sigma_j at k) as a product of 2x2 factors."""
    factors = []
    for k in range(n):
        v = scale * g[k]
        angle = np.linalg.norm(v)
        if angle < 1e-300:
            factors.append(SIGMA0)
            continue
        axis = v / angle
        p = axis[0] * SIGMAS[1] + axis[1] * SIGMAS[2] + axis[2] * SIGMAS[3]
        factors.append(np.cos(angle) * SIGMA0 + 1j * np.sin(angle) * p)
    return kron_all(factors)


def _fidelity(rho0, u, rhoT):
    return np.trace(u.conj().T @ rho0 @ u @ rhoT).real


def flow_step(u, rho0, rhoT, step):
    """One trial step U exp(step * G) along the local gradient G.

    Returns the stepped unitary and its fidelity; acceptance (monotonicity)
    is the caller's decision.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    n = num_qubits(np.asarray(u).shape[0])
    g = gradient_local_coefficients(rho0, u, rhoT)
    u_new = u @ _local_exponential(g, n, step)
    return u_new, _fidelity(rho0, u_new, rhoT)


def classify_endpoint(rho0, u, rhoT, grad_norm=0.0):
    """Classify a (near-)critical endpoint of the flow.

    Returns (label, eigenvalues) with label one of 'maximum', 'degenerate_max',
    'minimum', 'saddle', 'degenerate'. A 'maximum' signature is certified only
    if no near-zero eigenmode displaces the critical state U^dag rho0 U: on a
    degenerate maximal manifold such modes move the endpoint freely (the
    canonical form is not pinned down), which 'degenerate_max' records.
    Eigenvalues within max(SIGNATURE_TOL, 10 * grad_norm) of zero count as
    zero modes, since curvature below the gradient residual is noise.
    """
    n = num_qubits(np.asarray(u).shape[0])
    h = local_hessian_matrix(rho0, u, rhoT)
    w, vecs = hermitian_eig(h)
    band = max(SIGNATURE_TOL, 10.0 * grad_norm)
    label = classify_signature(w, tol=band)
    if label == "maximum":
        rc = u.conj().T @ rho0 @ u
        basis = local_tangent_basis(n)
        for i in range(len(w)):
            if abs(w[i]) < band:
                a = sum(vecs[k, i] * basis[k] for k in range(len(basis)))
                if np.linalg.norm(a @ rc - rc @ a) > MOVING_MODE_TOL:
                    label = "degenerate_max"
                    break
    return label, w


def run_flow(rho0, rhoT, u0=None, cfg=None, full_group=False):
    """Integrate the local gradient flow until convergence, stall or step budget.

    Backtracking halves the step when the fidelity would decrease and grows it
    by 1.1 (capped at the initial step) on success. When the gradient norm
    drops below ``cfg.grad_tol`` the endpoint is classified: a certified
    maximum ends the run as ``converged_max``; anything else triggers a seeded
    random local kick (at most five) when kicks are enabled, else
    ``converged_saddle``. The run stalls when the fidelity gain across the
    last 200 accepted steps falls below 1e-14 without meeting the gradient
    tolerance. ``full_group=True`` is a debug mode flowing over the full
    unitary group (no locality projection).
    """
    cfg = cfg or FlowConfig()
    rho0 = check_density_matrix(rho0, name="initial state")
    rhoT = check_density_matrix(rhoT, name="target state")
    dim = rho0.shape[0]
    n = num_qubits(dim)
    if u0 is None:
        u = np.eye(dim, dtype=complex)
    else:
        u = check_unitary(u0).astype(complex)
    check_same_dimension(rho0, rhoT, u)

    rng = np.random.default_rng(cfg.seed)
    trace = FlowTrace()
    step = cfg.step
    kicks_used = 0
    s = 0.0
    fid = _fidelity(rho0, u, rhoT)
    window = deque(maxlen=STALL_WINDOW + 1)
    window.append(fid)

    def grad_state():
        if full_group:
            g = gradient_full(rho0, u, rhoT)
            return g, np.linalg.norm(g)
        g = gradient_local_coefficients(rho0, u, rhoT)
        return g, local_norm(g, n)

    def advance(g, h):
        if full_group:
            return u @ expm_antihermitian(h * g)
        return u @ _local_exponential(g, n, h)

    def try_kick():
        nonlocal u, fid, g, gn, step, kicks_used
        if not cfg.enable_kicks or kicks_used >= MAX_KICKS:
            return False
        amplitude = min(cfg.kick_amplitude * KICK_GROWTH**kicks_used, KICK_CAP)
        kicked = _kick(u, rho0, rhoT, n, rng, amplitude, fid)
        if kicked is None:
            return False
        kicks_used += 1
        u, fid = kicked
        g, gn = grad_state()
        step = cfg.step
        window.clear()
        window.append(fid)
        trace.samples.append((s, fid, gn))
        return True

    g, gn = grad_state()
    trace.samples.append((s, fid, gn))
    outcome = MAX_STEPS
    steps = 0
    while steps < cfg.max_steps:
        steps += 1
        if gn < cfg.grad_tol:
            label, _ = classify_endpoint(rho0, u, rhoT, grad_norm=gn)
            if label == "maximum":
                outcome = CONVERGED_MAX
                break
            if try_kick():
                continue
            outcome = CONVERGED_SADDLE
            break

        u_trial = advance(g, step)
        fid_trial = _fidelity(rho0, u_trial, rhoT)
        if fid_trial >= fid - ACCEPT_SLACK:
            u = u_trial
            s += step
            fid = fid_trial
            g, gn = grad_state()
            trace.samples.append((s, fid, gn))
            window.append(fid)
            step = min(step * 1.1, cfg.step)
            if len(window) == STALL_WINDOW + 1 and window[-1] - window[0] < STALL_IMPROVEMENT:
                # a certified-max tail is a salvageable stall; anything else
                # gets a kick while the budget lasts
                if gn < CRITICAL_GRAD_NORM:
                    label, _ = classify_endpoint(rho0, u, rhoT, grad_norm=gn)
                    if label == "maximum":
                        outcome = STALLED
                        break
                if try_kick():
                    continue
                outcome = STALLED
                break
        else:
            step *= cfg.backtrack_factor
            if step < 1e-15:
                if try_kick():
                    continue
                outcome = STALLED
                break

    trace.outcome = outcome
    trace.final_unitary = u
    trace.kicks_used = kicks_used
    return trace


def _kick(u, rho0, rhoT, n, rng, amplitude, fid, max_draws=40):
    """Random local perturbation that does not lower the fidelity.

    Resamples the direction until the kicked fidelity is >= fid - ACCEPT_SLACK
    (an ascent or level direction exists at saddles and on flat manifolds);
    returns None when no acceptable draw is found.
    """
    for _ in range(max_draws):
        g = rng.normal(size=(n, 3)) * amplitude
        u_try = u @ _local_exponential(g, n, 1.0)
        fid_try = _fidelity(rho0, u_try, rhoT)
        if fid_try >= fid - ACCEPT_SLACK:
            return u_try, fid_try
    return None


def limiting_state(trace, rho0):
    """U_c^dag rho0 U_c for the final unitary of a flow trace."""
    rho0 = check_density_matrix(rho0, name="initial state")
    u = trace.final_unitary
    return u.conj().T @ rho0 @ u


def is_certified_maximum(trace, rho0, rhoT):
    """Whether a trace endpoint is a certified maximum of the local landscape.

    True for converged_max outcomes, and for stalled runs whose final gradient
    norm sits below the criticality threshold with a certified-max Hessian
    (ill-conditioned tails stall a hair above grad_tol; their second-order
    data is still conclusive).
    """
    if trace.outcome == CONVERGED_MAX:
        return True
    if trace.outcome == STALLED and trace.final_grad_norm < CRITICAL_GRAD_NORM:
        label, _ = classify_endpoint(
            rho0, trace.final_unitary, rhoT, grad_norm=trace.final_grad_norm
        )
        return label == "maximum"
    return False
