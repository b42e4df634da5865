"""Scikit-learn style facade over the flow and extraction pipelines.

Both estimators follow the usual conventions: constructor arguments are
stored verbatim (``get_params``/``set_params``/``clone`` work), fitted
attributes carry a trailing underscore, and ``transform`` operates on rows of
a 2-d array so states compose with ordinary pipelines.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .flow import FlowConfig, limiting_state, run_flow
from .linalg import kron_all
from .schmidt import bures_entanglement_nq, extract_schmidt
from .states import to_density
from .validation import check_state_vector


def _as_density(x):
    x = np.asarray(x, dtype=complex)
    if x.ndim == 1:
        return to_density(check_state_vector(x))
    return x


class LocalGradientAscent(BaseEstimator, TransformerMixin):
    """Fidelity maximizer over local unitaries.

    ``fit(X, y)`` runs the local gradient flow from the initial state ``X``
    toward the target ``y`` (amplitude vectors or density matrices) and
    stores the optimizing unitary. ``transform`` conjugates state vectors
    into the critical frame, i.e. maps psi to U_c^dag psi row by row.
    """

    def __init__(
        self,
        step=0.5,
        max_steps=20000,
        grad_tol=1e-10,
        backtrack_factor=0.5,
        kick_amplitude=1e-3,
        enable_kicks=True,
        seed=0,
    ):
        self.step = step
        self.max_steps = max_steps
        self.grad_tol = grad_tol
        self.backtrack_factor = backtrack_factor
        self.kick_amplitude = kick_amplitude
        self.enable_kicks = enable_kicks
        self.seed = seed

    def _config(self):
        return FlowConfig(
            step=self.step,
            max_steps=self.max_steps,
            grad_tol=self.grad_tol,
            backtrack_factor=self.backtrack_factor,
            kick_amplitude=self.kick_amplitude,
            seed=self.seed,
            enable_kicks=self.enable_kicks,
        )

    def fit(self, X, y):
        rho0 = _as_density(X)
        rhoT = _as_density(y)
        trace = run_flow(rho0, rhoT, cfg=self._config())
        self.trace_ = trace
        self.unitary_ = trace.final_unitary
        self.outcome_ = trace.outcome
        self.fidelity_ = trace.final_fidelity
        self.limiting_state_ = limiting_state(trace, rho0)
        self.n_iter_ = len(trace.samples) - 1
        return self

    def transform(self, X):
        if not hasattr(self, "unitary_"):
            raise NotFittedError("this LocalGradientAscent instance is not fitted yet")
        X = np.asarray(X, dtype=complex)
        single = X.ndim == 1
        rows = np.atleast_2d(X)
        out = rows @ self.unitary_.conj()  # row psi -> (U^dag psi)^T
        return out[0] if single else out

    def score(self, X, y):
        """Final fidelity of a fresh run from X toward y."""
        rho0 = _as_density(X)
        rhoT = _as_density(y)
        return run_flow(rho0, rhoT, cfg=self._config()).final_fidelity


class SchmidtCanonicalizer(BaseEstimator, TransformerMixin):
    """Learns the local unitary taking a state to its Schmidt canonical form.

    ``fit`` extracts the canonical form of one reference state; ``transform``
    applies the learned canonicalizing unitary W (diagonalizer, phase gates
    and global phase) to arbitrary states of the same register, so
    ``fit_transform(psi)`` returns the canonical amplitudes of ``psi``.
    """

    def __init__(
        self,
        step=0.5,
        max_steps=20000,
        grad_tol=1e-10,
        kick_amplitude=1e-3,
        enable_kicks=True,
        seed=0,
    ):
        self.step = step
        self.max_steps = max_steps
        self.grad_tol = grad_tol
        self.kick_amplitude = kick_amplitude
        self.enable_kicks = enable_kicks
        self.seed = seed

    def fit(self, X, y=None):
        X = np.asarray(X, dtype=complex)
        psi = X[0] if X.ndim == 2 else X
        cfg = FlowConfig(
            step=self.step,
            max_steps=self.max_steps,
            grad_tol=self.grad_tol,
            kick_amplitude=self.kick_amplitude,
            seed=self.seed,
            enable_kicks=self.enable_kicks,
        )
        form = extract_schmidt(psi, cfg=cfg)
        self.form_ = form
        self.lambdas_ = np.asarray(form.lambdas)
        self.phase_ = form.phase_phi
        self.canonical_state_ = form.canonical_state
        self.diagonalizer_ = form.diagonalizer
        try:
            self.bures_ = bures_entanglement_nq(form)
        except ValueError:
            self.bures_ = None
        n = form.n
        bits = np.array(
            [[(idx >> (n - 1 - k)) & 1 for k in range(n)] for idx in range(2**n)],
            dtype=float,
        )
        gates = np.exp(1j * (bits @ np.asarray(form.phase_corrections)))
        self.canonicalizer_ = (
            np.exp(1j * form.global_phase) * (gates[:, None] * form.diagonalizer.dagger_matrix())
        )
        return self

    def transform(self, X):
        if not hasattr(self, "canonicalizer_"):
            raise NotFittedError("this SchmidtCanonicalizer instance is not fitted yet")
        X = np.asarray(X, dtype=complex)
        single = X.ndim == 1
        rows = np.atleast_2d(X)
        out = rows @ self.canonicalizer_.T
        return out[0] if single else out


def local_unitary_matrix(factors):
    """Convenience: full matrix of a list of single-qubit factors."""
    return kron_all(factors)
