"""Fidelity landscape functionals over local unitary transformations.

The cost is F(U) = <U^dag rho0 U rho_T>_0 with the bracket normalized so that
for pure states F equals the squared overlap. Gradients are right-translated:
the returned tangent G satisfies dU = U G, with G = [U^dag rho0 U, rho_T] for
the full unitary group and its projection onto single-qubit Pauli directions
for the local flow.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import SIGMAS, embed_single_qubit, hermitian_eig, partial_trace
from .states import schmidt_vector_2q, to_density
from .validation import (
    as_square_matrix,
    check_anti_hermitian,
    check_density_matrix,
    check_qubit_count,
    check_same_dimension,
    check_unitary,
    num_qubits,
)

#: Gradient norm below which a point is treated as critical.
CRITICAL_GRAD_NORM = 1e-8

#: Eigenvalue tolerance for classifying Hessian signatures.
SIGNATURE_TOL = 1e-9


def bracket0(x):
    """Real part of the trace: (1/2) Tr[x + x^dag] with normalization N = 1."""
    x = as_square_matrix(x)
    return np.trace(x).real


def fidelity(rho0, u, rhoT):
    """F = <U^dag rho0 U rho_T>_0; equals |<psi0|U|psiT>|^2 for pure states."""
    rho0 = check_density_matrix(rho0, name="initial state")
    rhoT = check_density_matrix(rhoT, name="target state")
    u = check_unitary(u)
    check_same_dimension(rho0, u, rhoT)
    return bracket0(u.conj().T @ rho0 @ u @ rhoT)


def evolved_state(rho0, u):
    """The moving state U^dag rho0 U."""
    return u.conj().T @ rho0 @ u


def gradient_full(rho0, u, rhoT):
    """Right-translated gradient over the full unitary group.

    G = [U^dag rho0 U, rho_T]; anti-Hermitian, and the directional derivative
    of the fidelity along e^{t a} equals Re Tr[G^dag a].
    """
    rho0 = check_density_matrix(rho0, name="initial state")
    rhoT = check_density_matrix(rhoT, name="target state")
    u = check_unitary(u)
    check_same_dimension(rho0, u, rhoT)
    rc = evolved_state(rho0, u)
    return rc @ rhoT - rhoT @ rc


def local_tangent_basis(n):
    """The 3n anti-Hermitian generators i*sigma_j at qubit k, qubit-major order."""
    n = check_qubit_count(n)
    basis = []
    for k in range(n):
        for j in (1, 2, 3):
            basis.append(1j * embed_single_qubit(SIGMAS[j], k, n))
    return basis


def local_coefficients(a, n=None):
    """Real coefficients g[k, j-1] of an anti-Hermitian a on the local basis.

    a decomposes as sum_{k,j} i g[k,j] * (sigma_j at qubit k) plus multi-qubit
    terms; the coefficients are Tr[a S_{k,j}] / 2**n, purely imaginary for
    anti-Hermitian input.
    """
    a = np.asarray(a, dtype=complex)
    if n is None:
        n = num_qubits(a.shape[0])
    dim = 2**n
    g = np.empty((n, 3))
    for k in range(n):
        r = partial_trace(a, k, n)
        for j in (1, 2, 3):
            g[k, j - 1] = (np.trace(r @ SIGMAS[j]) / dim).imag
    return g


def assemble_local(g, n):
    """Anti-Hermitian matrix sum_{k,j} i g[k,j] * (sigma_j at qubit k)."""
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    for k in range(n):
        for j in (1, 2, 3):
            if g[k, j - 1] != 0.0:
                out += 1j * g[k, j - 1] * embed_single_qubit(SIGMAS[j], k, n)
    return out


def local_norm(g, n):
    """Frobenius norm of assemble_local(g, n): sqrt(2**n * sum g^2)."""
    return np.sqrt(float((g**2).sum()) * 2**n)


def project_local(a):
    """Hilbert-Schmidt orthogonal projection onto single-qubit Pauli directions.

    Eliminates every multi-qubit term of an anti-Hermitian matrix, keeping
    sum_{k,j} (Tr[a S_{k,j}] / 2**n) S_{k,j}. Idempotent and norm-contracting.
    """
    a = check_anti_hermitian(a)
    n = num_qubits(a.shape[0])
    return assemble_local(local_coefficients(a, n), n)


def gradient_local_coefficients(rho0, u, rhoT):
    """Local-basis coefficients of the projected gradient (no validation)."""
    rc = u.conj().T @ rho0 @ u
    k = rc @ rhoT - rhoT @ rc
    return local_coefficients(k, num_qubits(u.shape[0]))


def gradient_local(rho0, u, rhoT):
    """Projected gradient P([U^dag rho0 U, rho_T]); zero exactly at critical points."""
    g = gradient_full(rho0, u, rhoT)
    n = num_qubits(g.shape[0])
    return assemble_local(local_coefficients(g, n), n)


def hessian_quadratic(rho0, u, rhoT, a):
    """Second derivative of the fidelity along U e^{t a} at t = 0.

    <{rho_T, U^dag rho0 U} a^2>_0 - 2 <U^dag rho0 U a rho_T a>_0. Under the
    real-part bracket this expression coincides with its critical-point
    simplification identically, not only at critical points.
    """
    rho0 = check_density_matrix(rho0, name="initial state")
    rhoT = check_density_matrix(rhoT, name="target state")
    u = check_unitary(u)
    a = check_anti_hermitian(a)
    check_same_dimension(rho0, u, rhoT, a)
    rc = evolved_state(rho0, u)
    aa = a @ a
    term1 = np.trace((rhoT @ rc + rc @ rhoT) @ aa).real
    term2 = 2.0 * np.trace(rc @ a @ rhoT @ a).real
    return term1 - term2


def local_hessian_matrix(rho0, u, rhoT):
    """Symmetric 3n x 3n Hessian over the local tangent basis.

    Assembled by polarization H(a,b) = (Q(a+b) - Q(a-b))/4 of the quadratic
    form, over the qubit-major basis i*sigma_j at qubit k.
    """
    rho0 = check_density_matrix(rho0, name="initial state")
    rhoT = check_density_matrix(rhoT, name="target state")
    u = check_unitary(u)
    check_same_dimension(rho0, u, rhoT)
    n = num_qubits(u.shape[0])
    rc = evolved_state(rho0, u)
    basis = local_tangent_basis(n)
    m = len(basis)

    def quad(a):
        aa = a @ a
        t1 = np.trace((rhoT @ rc + rc @ rhoT) @ aa).real
        t2 = 2.0 * np.trace(rc @ a @ rhoT @ a).real
        return t1 - t2

    h = np.zeros((m, m))
    for i in range(m):
        h[i, i] = quad(basis[i])
        for j in range(i + 1, m):
            q = 0.25 * (quad(basis[i] + basis[j]) - quad(basis[i] - basis[j]))
            h[i, j] = q
            h[j, i] = q
    return h


@dataclass(frozen=True)
class HessianSpectrum:
    """Eigenvalues (ascending) of the local Hessian and their sign pattern."""

    eigenvalues: np.ndarray
    signature: str  # maximum | minimum | saddle | degenerate


def classify_signature(eigenvalues, tol=SIGNATURE_TOL):
    """Sign pattern of a spectrum: maximum/minimum/saddle/degenerate."""
    w = np.asarray(eigenvalues, dtype=float)
    has_pos = bool(np.any(w > tol))
    has_neg = bool(np.any(w < -tol))
    if has_pos and has_neg:
        return "saddle"
    if has_neg:
        return "maximum"
    if has_pos:
        return "minimum"
    return "degenerate"


def hessian_matrix_local(rho0, u, rhoT):
    """Spectrum and signature of the local Hessian at an (approximately) critical point.

    Warns when the local gradient norm exceeds the criticality threshold,
    since the signature is then unreliable.
    """
    g = gradient_local_coefficients(rho0, u, rhoT)
    n = num_qubits(np.asarray(u).shape[0])
    gn = local_norm(g, n)
    if gn > CRITICAL_GRAD_NORM:
        warnings.warn(
            f"local gradient norm {gn:.3e} exceeds {CRITICAL_GRAD_NORM:.0e}; "
            "Hessian signature may be unreliable",
            stacklevel=2,
        )
    h = local_hessian_matrix(rho0, u, rhoT)
    w, _ = hermitian_eig(h)
    return HessianSpectrum(eigenvalues=w, signature=classify_signature(w))


def hessian_spectrum_schmidt_pair(theta, phi):
    """Analytic Hessian spectrum at a Schmidt-family critical point.

    Critical state rho_S(phi) against target rho_S(theta); entries in the
    order (0, a, a, b, c, c) with
    a = -1 - cos(theta - phi) - sin(theta) - sin(phi),
    b = -4 sin(theta) sin(phi),
    c = -1 - cos(theta - phi) + sin(theta) + sin(phi).
    """
    a = -1.0 - np.cos(theta - phi) - np.sin(theta) - np.sin(phi)
    b = -4.0 * np.sin(theta) * np.sin(phi)
    c = -1.0 - np.cos(theta - phi) + np.sin(theta) + np.sin(phi)
    return np.array([0.0, a, a, b, c, c])


def hessian_spectrum_submanifold(theta, x):
    """Analytic Hessian spectrum on the antidiagonal critical family.

    Critical state x|down,up><down,up| + (1-x)|up,down><up,down| against
    target rho_S(theta); entries (1-r, 1-r, 0, 1+r, 1+r, 0) with
    r = sqrt((1-2x)^2 cos^2(theta) + sin^2(theta)).
    """
    r = np.sqrt((1.0 - 2.0 * x) ** 2 * np.cos(theta) ** 2 + np.sin(theta) ** 2)
    return np.array([1.0 - r, 1.0 - r, 0.0, 1.0 + r, 1.0 + r, 0.0])


def critical_residual(rho_c, theta):
    """Frobenius norm of P([rho_c, rho_S(theta)]); zero identifies critical states."""
    rho_c = check_density_matrix(rho_c, n=2, name="candidate state")
    rho_s = to_density(schmidt_vector_2q(theta))
    k = rho_c @ rho_s - rho_s @ rho_c
    g = local_coefficients(k, 2)
    return local_norm(g, 2)
