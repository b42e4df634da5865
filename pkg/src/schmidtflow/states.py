"""Constructors for register states and simple local/entangling unitaries."""

import numpy as np

from .linalg import SIGMAS, kron_all, pauli_string
from .validation import check_qubit_count, check_state_vector


def basis_state(n, index):
    """Computational basis vector |index> of an n-qubit register."""
    n = check_qubit_count(n)
    dim = 2**n
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for {n} qubits")
    psi = np.zeros(dim, dtype=complex)
    psi[index] = 1.0
    return psi


def all_up_state(n):
    """|up, up, ..., up> (basis index 0)."""
    return basis_state(n, 0)


def product_state(factors):
    """Tensor product of normalized single-qubit vectors, qubit 0 leftmost."""
    psi = np.ones(1, dtype=complex)
    for f in factors:
        f = np.asarray(f, dtype=complex).ravel()
        if f.shape != (2,):
            raise ValueError("each factor must be a length-2 vector")
        psi = np.kron(psi, f)
    return check_state_vector(psi, tol=1e-10, name="product state")


def to_density(psi):
    """Rank-1 density matrix |psi><psi|."""
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def schmidt_vector_2q(theta):
    """cos(theta/2)|up,up> + sin(theta/2)|down,down> for theta in [0, pi]."""
    if not 0.0 <= theta <= np.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    psi = np.zeros(4, dtype=complex)
    psi[0] = np.cos(theta / 2.0)
    psi[3] = np.sin(theta / 2.0)
    return psi


def ghz_state(n):
    """(|up...up> + |down...down>)/sqrt(2)."""
    n = check_qubit_count(n)
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = psi[-1] = 1.0 / np.sqrt(2.0)
    return psi


def pauli_rotation(letters, angle):
    """exp(i * angle * P) for a Pauli string P, via P**2 = I."""
    p = pauli_string(letters)
    return np.cos(angle) * np.eye(p.shape[0], dtype=complex) + 1j * np.sin(angle) * p


def random_state(n, rng):
    """Haar-random pure state of n qubits."""
    n = check_qubit_count(n)
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return v / np.linalg.norm(v)


def random_product_state(n, rng):
    """Random product state, each factor uniform on the Bloch sphere."""
    n = check_qubit_count(n)
    factors = []
    for _ in range(n):
        f = rng.normal(size=2) + 1j * rng.normal(size=2)
        factors.append(f / np.linalg.norm(f))
    return product_state(factors)


def random_single_qubit_unitary(rng):
    """Haar-random 2x2 unitary (QR of a complex Gaussian, phases fixed)."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_local_unitary(n, rng):
    """Tensor product of independent Haar-random single-qubit unitaries."""
    n = check_qubit_count(n)
    return kron_all(random_single_qubit_unitary(rng) for _ in range(n))


# Convenience export used in several modules.
PAULIS = SIGMAS
