"""Input validation helpers shared across the package.

All public entry points funnel their array arguments through these checks so
that shape/convention errors surface with a clear message instead of a numpy
broadcast error deep inside a flow run.

Conventions: a register of ``n`` qubits lives in dimension ``2**n``; qubit 0
is the most significant bit of the basis index and the up state maps to bit 0
(so ``|up,up>`` is index 0 and ``|down,down>`` is index 3 for two qubits).
"""

import numpy as np

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10
UNITARITY_TOL = 1e-10
ANTIHERMITICITY_TOL = 1e-12
NORM_TOL = 1e-12


def check_qubit_count(n):
    """Validate a qubit count and return it as a plain int."""
    n = int(n)
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    return n


def num_qubits(dim):
    """Number of qubits for a Hilbert-space dimension, rejecting non powers of two."""
    dim = int(dim)
    n = dim.bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def as_square_matrix(x, name="matrix"):
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"{name} must be square, got shape {x.shape}")
    return x


def check_state_vector(psi, n=None, tol=NORM_TOL, name="state"):
    """Validate a pure-state amplitude vector; returns it as complex ndarray."""
    psi = np.asarray(psi, dtype=complex).ravel()
    m = num_qubits(psi.shape[0])
    if n is not None and m != n:
        raise ValueError(f"{name} has {m} qubits, expected {n}")
    nrm = np.linalg.norm(psi)
    if abs(nrm - 1.0) > tol:
        raise ValueError(f"{name} is not normalized: |norm - 1| = {abs(nrm - 1.0):.3e}")
    return psi


def check_density_matrix(rho, n=None, name="density matrix"):
    """Validate Hermiticity, unit trace and positivity of a density matrix.

    Purity is deliberately not enforced: the antidiagonal critical family is a
    legitimately mixed input to the landscape operations.
    """
    rho = as_square_matrix(rho, name)
    m = num_qubits(rho.shape[0])
    if n is not None and m != n:
        raise ValueError(f"{name} has {m} qubits, expected {n}")
    if np.linalg.norm(rho - rho.conj().T) > HERMITICITY_TOL * max(1.0, np.linalg.norm(rho)):
        raise ValueError(f"{name} is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-10 or abs(np.trace(rho).imag) > 1e-10:
        raise ValueError(f"{name} does not have unit trace (trace = {np.trace(rho):.6g})")
    w = np.linalg.eigvalsh(rho)
    if w.min() < EIGENVALUE_FLOOR:
        raise ValueError(f"{name} has a negative eigenvalue {w.min():.3e}")
    return rho


def check_unitary(u, n=None, tol=UNITARITY_TOL, name="unitary"):
    u = as_square_matrix(u, name)
    m = num_qubits(u.shape[0])
    if n is not None and m != n:
        raise ValueError(f"{name} has {m} qubits, expected {n}")
    defect = np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]))
    if defect > tol:
        raise ValueError(f"{name} is not unitary: ||U^dag U - I|| = {defect:.3e}")
    return u


def check_anti_hermitian(a, n=None, tol=ANTIHERMITICITY_TOL, name="tangent direction"):
    a = as_square_matrix(a, name)
    m = num_qubits(a.shape[0])
    if n is not None and m != n:
        raise ValueError(f"{name} has {m} qubits, expected {n}")
    defect = np.linalg.norm(a + a.conj().T)
    if defect > tol * max(1.0, np.linalg.norm(a)):
        raise ValueError(f"{name} is not anti-Hermitian: ||A + A^dag|| = {defect:.3e}")
    return a


def check_hermitian(h, tol=1e-10, name="matrix"):
    h = as_square_matrix(h, name)
    defect = np.linalg.norm(h - h.conj().T)
    if defect > tol * max(1.0, np.linalg.norm(h)):
        raise ValueError(f"{name} is not Hermitian: ||H - H^dag|| = {defect:.3e}")
    return h


def check_same_dimension(*mats):
    dims = {m.shape[0] for m in mats}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")
