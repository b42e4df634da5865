"""Dense complex linear algebra over qubit registers.

Kronecker composition, Pauli-string expansion, anti-Hermitian matrix
exponentials, a deterministic cyclic Jacobi eigensolver for Hermitian
matrices, and single-qubit partial traces. Everything operates on plain
complex ndarrays; qubit 0 is the most significant bit.
"""

from itertools import product as _iterproduct

import numpy as np

from .validation import (
    as_square_matrix,
    check_anti_hermitian,
    check_hermitian,
    check_qubit_count,
    num_qubits,
)

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMAS = (SIGMA0, SIGMA1, SIGMA2, SIGMA3)


def kron(a, b):
    """Kronecker product of two square matrices."""
    a = as_square_matrix(a, "left operand")
    b = as_square_matrix(b, "right operand")
    return np.kron(a, b)


def kron_all(factors):
    """Kronecker product of a sequence of matrices, left factor most significant."""
    out = np.eye(1, dtype=complex)
    for f in factors:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def pauli_string(letters):
    """Matrix of a Pauli string given as a sequence over {0,1,2,3}."""
    return kron_all(SIGMAS[int(j)] for j in letters)


def pauli_strings(n):
    """Iterate over all 4**n Pauli strings as (letters, matrix) pairs."""
    n = check_qubit_count(n)
    for letters in _iterproduct(range(4), repeat=n):
        yield letters, pauli_string(letters)


def pauli_coefficients(x, n):
    """Expand a matrix in the Pauli-string basis.

    Returns a dict mapping letter tuples to coefficients c_P = Tr[x P] / 2**n,
    so that sum_P c_P * P reconstructs x.
    """
    n = check_qubit_count(n)
    x = as_square_matrix(x)
    if x.shape[0] != 2**n:
        raise ValueError(f"matrix dimension {x.shape[0]} does not match {n} qubits")
    dim = 2**n
    return {letters: np.trace(x @ p) / dim for letters, p in pauli_strings(n)}


def embed_single_qubit(m, k, n):
    """Embed a 2x2 operator at qubit position k of an n-qubit register."""
    n = check_qubit_count(n)
    if not 0 <= k < n:
        raise ValueError(f"qubit index {k} out of range for {n} qubits")
    m = np.asarray(m, dtype=complex)
    left = np.eye(2**k, dtype=complex)
    right = np.eye(2 ** (n - 1 - k), dtype=complex)
    return np.kron(np.kron(left, m), right)


def hermitian_eig(h, offdiag_tol=1e-13, max_sweeps=100):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, eigenvector matrix V with h @ V[:, i] =
    w[i] * V[:, i]). Deterministic: fixed sweep order, convergence when the
    off-diagonal Frobenius norm drops below ``offdiag_tol`` relative to the
    matrix scale. Eigenvectors inside near-degenerate clusters (gap < 1e-9)
    are re-orthonormalized; no meaning attaches to their individual identity.
    """
    h = check_hermitian(h)
    d = h.shape[0]
    a = 0.5 * (h + h.conj().T)
    v = np.eye(d, dtype=complex)
    if d == 1:
        return np.array([a[0, 0].real]), v
    scale = max(np.linalg.norm(a), 1.0)
    diag_mask = ~np.eye(d, dtype=bool)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a[diag_mask])
        if off < offdiag_tol * scale:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                phase = apq / abs(apq)
                zeta = (a[q, q].real - a[p, p].real) / (2.0 * abs(apq))
                if zeta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(zeta) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # Plane rotation J: J[p,p]=c, J[p,q]=s*phase, J[q,p]=-s*conj(phase), J[q,q]=c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * np.conj(phase) * col_q
                a[:, q] = s * phase * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * np.conj(phase) * row_p + c * row_q
                col_p = v[:, p].copy()
                col_q = v[:, q].copy()
                v[:, p] = c * col_p - s * np.conj(phase) * col_q
                v[:, q] = s * phase * col_p + c * col_q
    else:
        raise RuntimeError("Jacobi eigensolver did not converge")

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    _reorthonormalize_clusters(w, v)
    return w, v


def _reorthonormalize_clusters(w, v, gap=1e-9):
    """Modified Gram-Schmidt within near-degenerate eigenvalue clusters."""
    d = len(w)
    start = 0
    while start < d:
        stop = start + 1
        while stop < d and w[stop] - w[stop - 1] < gap:
            stop += 1
        if stop - start > 1:
            for i in range(start, stop):
                for j in range(start, i):
                    v[:, i] -= (v[:, j].conj() @ v[:, i]) * v[:, j]
                v[:, i] /= np.linalg.norm(v[:, i])
        start = stop


def expm_antihermitian(a):
    """Unitary exponential of an anti-Hermitian matrix via eigendecomposition.

    Writes a = i*H with H Hermitian and returns V e^{i w} V^dag, which is
    unitary to machine precision.
    """
    a = check_anti_hermitian(a)
    h = -1j * a
    w, v = hermitian_eig(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def partial_trace(rho, keep, n=None):
    """Trace out all qubits except ``keep``, returning a 2x2 matrix.

    Accepts any square matrix of qubit-register dimension (density matrices,
    commutators, ...); Hermiticity and trace are whatever the input implies.
    """
    rho = as_square_matrix(rho, "operator")
    if n is None:
        n = num_qubits(rho.shape[0])
    if not 0 <= keep < n:
        raise ValueError(f"qubit index {keep} out of range for {n} qubits")
    t = rho.reshape((2,) * (2 * n))
    row_idx = list(range(n))
    col_idx = [i if i != keep else n for i in range(n)]
    return np.einsum(t, row_idx + col_idx, [keep, n])


def purity(rho):
    """Tr[rho^2] as a real number."""
    rho = as_square_matrix(rho)
    return np.trace(rho @ rho).real
