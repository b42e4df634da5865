"""Bundled benchmark scenarios with pinned constructions and reference values.

The rotation angles below were resolved by matching the reference limiting
matrix through the singular-value oracle: the entangling sigma2 x sigma2
angle is 7*pi/20 (Schmidt angle 3*pi/10), the single-qubit rotations are
pi/4. ``cmd reproduce`` prints these constants alongside its checks.
"""

import numpy as np

from .states import all_up_state, pauli_rotation, schmidt_vector_2q, to_density

FIG1_ROTATION_ANGLE = np.pi / 4  # sigma0 x sigma1 on |up,up>
ENTANGLED_LOCAL_ANGLE = np.pi / 4  # sigma2 x sigma0 factor
ENTANGLED_COUPLING_ANGLE = 7 * np.pi / 20  # sigma2 x sigma2 factor
ENTANGLED_SCHMIDT_ANGLE = 3 * np.pi / 10  # oracle angle of the entangled state
EXTRA_PHASE_ANGLE = np.pi / 4  # both factors dressing rho_S(pi/4)

#: Reference limiting matrix corners for the entangled example.
LIMIT_CORNERS = (0.793893, 0.404508, 0.206107)

#: Reference canonical magnitudes of the three-qubit worked example,
#: ordered (all-up, |udd|, |dud|, |ddu|, |ddd|).
THREE_QUBIT_MAGNITUDES = (0.986657, 0.128, 0.0347616, 0.085024, 0.0411138)

#: Raw spinor component whose magnitude identity the report checks.
THREE_QUBIT_LAST_COMPONENT = -0.0138602 + 0.0387071j


def fig1_initial_state():
    """Separable state: |up,up> rotated by exp(i pi/4 sigma0 x sigma1)."""
    u = pauli_rotation((0, 1), FIG1_ROTATION_ANGLE)
    return u @ all_up_state(2)


def entangled_initial_state():
    """Entangled example state with Schmidt angle 3*pi/10."""
    w = pauli_rotation((2, 2), ENTANGLED_COUPLING_ANGLE)
    v = pauli_rotation((2, 0), ENTANGLED_LOCAL_ANGLE)
    return v @ (w @ all_up_state(2))


def extra_phase_state():
    """rho_S(pi/4) dressed by local rotations; its extraction exposes an
    intermediate -i phase that the phase gates remove."""
    a = pauli_rotation((2, 0), EXTRA_PHASE_ANGLE)
    b = pauli_rotation((0, 1), EXTRA_PHASE_ANGLE)
    return a @ (b @ schmidt_vector_2q(np.pi / 4))


def three_qubit_example_state():
    """The eight-component worked example (norm exactly one)."""
    return np.array(
        [
            0.3 + 0.1j,
            0.2,
            0.3,
            0.3,
            0.4,
            0.2,
            0.5,
            np.sqrt(1 - 0.77),
        ],
        dtype=complex,
    )


def limit_matrix_reference():
    """The reference 4x4 limiting density matrix for the entangled example."""
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = LIMIT_CORNERS[0]
    m[0, 3] = m[3, 0] = LIMIT_CORNERS[1]
    m[3, 3] = LIMIT_CORNERS[2]
    return m


def entangled_oracle_schmidt_state():
    """Canonical Schmidt density matrix of the entangled example state."""
    return to_density(schmidt_vector_2q(ENTANGLED_SCHMIDT_ANGLE))
