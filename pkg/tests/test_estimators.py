"""Estimator facade tests: sklearn conventions, fitted attributes, transforms."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from schmidtflow import LocalGradientAscent, SchmidtCanonicalizer, schmidt_state_2q
from schmidtflow import scenarios
from schmidtflow.states import all_up_state, random_state, schmidt_vector_2q


class TestLocalGradientAscent:
    def test_get_set_params_and_clone(self):
        est = LocalGradientAscent(step=0.25, seed=7)
        assert est.get_params()["step"] == 0.25
        est2 = clone(est)
        assert est2.get_params() == est.get_params()
        est.set_params(max_steps=100)
        assert est.max_steps == 100

    def test_fit_attributes(self):
        est = LocalGradientAscent(seed=0)
        est.fit(scenarios.fig1_initial_state(), schmidt_state_2q(np.pi / 4))
        assert est.outcome_ == "converged_max"
        assert est.fidelity_ == pytest.approx(np.cos(np.pi / 8) ** 2, abs=1e-9)
        assert est.unitary_.shape == (4, 4)
        assert est.n_iter_ >= 1

    def test_transform_moves_initial_to_limit(self):
        psi0 = scenarios.entangled_initial_state()
        est = LocalGradientAscent().fit(psi0, schmidt_state_2q(np.pi / 4))
        moved = est.transform(psi0)
        rho = np.outer(moved, moved.conj())
        assert np.abs(rho - est.limiting_state_).max() < 1e-10

    def test_transform_requires_fit(self):
        with pytest.raises(NotFittedError):
            LocalGradientAscent().transform(all_up_state(2))

    def test_score(self):
        est = LocalGradientAscent(seed=0)
        s = est.score(scenarios.fig1_initial_state(), schmidt_state_2q(np.pi / 4))
        assert s == pytest.approx(np.cos(np.pi / 8) ** 2, abs=1e-9)

    def test_accepts_density_matrices(self):
        est = LocalGradientAscent().fit(
            schmidt_state_2q(0.0), schmidt_state_2q(np.pi / 4)
        )
        assert est.outcome_ == "converged_max"


class TestSchmidtCanonicalizer:
    def test_fit_attributes(self):
        est = SchmidtCanonicalizer(seed=0).fit(scenarios.three_qubit_example_state())
        np.testing.assert_allclose(est.lambdas_, scenarios.THREE_QUBIT_MAGNITUDES, atol=1e-4)
        assert est.bures_ == pytest.approx(0.026686, abs=1e-4)
        assert est.phase_ is not None

    def test_fit_transform_gives_canonical_state(self):
        psi = scenarios.extra_phase_state()
        est = SchmidtCanonicalizer(seed=0)
        out = est.fit_transform(psi)
        rho = np.outer(out, out.conj())
        assert np.abs(rho - schmidt_state_2q(np.pi / 4)).max() < 1e-6

    def test_transform_batches_rows(self):
        psi = scenarios.three_qubit_example_state()
        est = SchmidtCanonicalizer(seed=0).fit(psi)
        batch = np.stack([psi, psi])
        out = est.transform(batch)
        assert out.shape == (2, 8)
        np.testing.assert_allclose(out[0], out[1])
        np.testing.assert_allclose(out[0], est.canonical_state_, atol=1e-8)

    def test_transform_is_unitary_on_norms(self):
        rng = np.random.default_rng(8)
        est = SchmidtCanonicalizer(seed=1).fit(schmidt_vector_2q(0.9))
        for _ in range(5):
            psi = random_state(2, rng)
            assert np.linalg.norm(est.transform(psi)) == pytest.approx(1.0, abs=1e-10)

    def test_requires_fit(self):
        with pytest.raises(NotFittedError):
            SchmidtCanonicalizer().transform(all_up_state(2))

    def test_clone_roundtrip(self):
        est = SchmidtCanonicalizer(seed=3, grad_tol=1e-9)
        est2 = clone(est)
        assert est2.get_params()["grad_tol"] == 1e-9
