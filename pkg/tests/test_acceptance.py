"""Acceptance suite: one test per criterion, each printing a pass line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
summary; every tolerance and runtime budget is asserted in place.
"""

import time

import numpy as np
import pytest

from schmidtflow import (
    CONVERGED_MAX,
    FlowConfig,
    bures_entanglement_nq,
    classify_signature,
    critical_residual,
    expm_antihermitian,
    extract_schmidt,
    fidelity,
    flow_step,
    gradient_local,
    hessian_spectrum_schmidt_pair,
    hessian_spectrum_submanifold,
    limiting_state,
    local_hessian_matrix,
    local_tangent_basis,
    project_local,
    rank1_oracle_nq,
    run_flow,
    schmidt_oracle_2q,
    schmidt_state_2q,
    to_density,
)
from schmidtflow import scenarios
from schmidtflow.cli import main as cli_main
from schmidtflow.states import (
    all_up_state,
    basis_state,
    random_local_unitary,
    random_product_state,
    random_state,
)

GRID_11 = [k * np.pi / 12 for k in range(1, 12)]


def report(num, detail):
    print(f"\nACCEPTANCE {num}: PASS — {detail}")


def test_criterion_01_corollary_end_to_end():
    """Flow-achieved maximal fidelity equals cos^2(theta_oracle/2)."""
    t0 = time.monotonic()
    rng = np.random.default_rng(1001)
    rho_i = to_density(all_up_state(2))
    checked = 0
    worst = 0.0
    while checked < 100:
        psi = random_state(2, rng)
        theta, _ = schmidt_oracle_2q(psi)
        if not 0.05 <= theta <= np.pi / 2 - 0.05:
            continue
        trace = run_flow(rho_i, to_density(psi), cfg=FlowConfig(seed=checked))
        err = abs(trace.final_fidelity - np.cos(theta / 2) ** 2)
        assert err < 1e-6, (checked, theta, err, trace.outcome)
        worst = max(worst, err)
        checked += 1
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0, f"runtime {elapsed:.1f}s exceeds 30s"
    report(1, f"100 states, worst |dF| = {worst:.2e}, {elapsed:.1f}s")


def test_criterion_02_theorem_limiting_states():
    """Separable states converge to |uu> (theta < pi/2) or |dd> (theta > pi/2)."""
    t0 = time.monotonic()
    rng = np.random.default_rng(2002)
    for theta, corner in ((np.pi / 4, 0), (3 * np.pi / 4, 3)):
        target = schmidt_state_2q(theta)
        for i in range(50):
            rho0 = to_density(random_product_state(2, rng))
            trace = run_flow(rho0, target, cfg=FlowConfig(seed=i, enable_kicks=True))
            lim = limiting_state(trace, rho0)
            overlap = lim[corner, corner].real
            assert overlap > 1 - 1e-6, (theta, i, overlap, trace.outcome)
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0, f"runtime {elapsed:.1f}s exceeds 60s"
    report(2, f"2 x 50 runs, both limits reached, {elapsed:.1f}s")


def test_criterion_03_reference_limiting_matrix():
    """The entangled example's flow limit reproduces the reference corners."""
    rho0 = to_density(scenarios.entangled_initial_state())
    trace = run_flow(rho0, schmidt_state_2q(np.pi / 4), cfg=FlowConfig(seed=0))
    lim = limiting_state(trace, rho0)
    corners = (lim[0, 0].real, lim[0, 3], lim[3, 3].real)
    assert abs(corners[0] - 0.793893) < 1e-4
    assert abs(corners[1] - 0.404508) < 1e-4
    assert abs(corners[2] - 0.206107) < 1e-4
    assert np.abs(lim - scenarios.limit_matrix_reference()).max() < 1e-4
    report(3, f"corners ({corners[0]:.6f}, {abs(corners[1]):.6f}, {corners[2]:.6f})")


def _spectrum_match(numeric, analytic):
    """Assert spectra agree up to one global positive scale."""
    w = np.sort(numeric)
    ana = np.sort(np.asarray(analytic, dtype=float))
    nz = np.abs(ana) > 1e-9
    # zero multiplicities exact
    assert int((~nz).sum()) == int((np.abs(w) < 1e-9).sum())
    scales = w[nz] / ana[nz]
    ref = scales[np.argmax(np.abs(ana[nz]))]
    assert ref > 0
    assert np.abs(scales - ref).max() < 1e-6 * max(1.0, abs(ref))
    # signature labels agree
    assert classify_signature(w) == classify_signature(ana)
    return ref


def test_criterion_04_hessian_spectra_grid():
    """Numerical 6x6 Hessians match the analytic spectra up to one scale."""
    t0 = time.monotonic()
    eye = np.eye(4, dtype=complex)
    scales = []
    for theta in GRID_11:
        rho_t = schmidt_state_2q(theta)
        for phi in GRID_11:
            h = local_hessian_matrix(schmidt_state_2q(phi), eye, rho_t)
            scales.append(
                _spectrum_match(np.linalg.eigvalsh(h), hessian_spectrum_schmidt_pair(theta, phi))
            )
    for theta in GRID_11:
        rho_t = schmidt_state_2q(theta)
        for x in np.linspace(0.0, 1.0, 11):
            rho_c = x * to_density(basis_state(2, 2)) + (1 - x) * to_density(basis_state(2, 1))
            h = local_hessian_matrix(rho_c, eye, rho_t)
            scales.append(
                _spectrum_match(np.linalg.eigvalsh(h), hessian_spectrum_submanifold(theta, x))
            )
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0, f"runtime {elapsed:.1f}s exceeds 60s"
    report(
        4,
        f"121 Schmidt-pair + 121 submanifold points, scale in "
        f"[{min(scales):.6f}, {max(scales):.6f}], {elapsed:.1f}s",
    )


def test_criterion_05_critical_condition():
    """P[rho_c, rho_S(theta)] vanishes on the Schmidt family and x-family."""
    worst = 0.0
    for theta in GRID_11:
        for phi in GRID_11:
            worst = max(worst, critical_residual(schmidt_state_2q(phi), theta))
    for x in np.linspace(0.0, 1.0, 21):
        rho_c = x * to_density(basis_state(2, 2)) + (1 - x) * to_density(basis_state(2, 1))
        for theta in GRID_11:
            worst = max(worst, critical_residual(rho_c, theta))
    assert worst < 1e-12
    report(5, f"max residual {worst:.2e} over both families")


def test_criterion_06_three_qubit_worked_example(tmp_path, capsys):
    """cmd reproduce example-3q matches the reference canonical magnitudes."""
    code = cli_main(["reproduce", "example-3q", "--out-dir", str(tmp_path), "--seed", "0"])
    assert code == 0
    form = extract_schmidt(scenarios.three_qubit_example_state(), cfg=FlowConfig(seed=0))
    errs = np.abs(np.asarray(form.lambdas) - scenarios.THREE_QUBIT_MAGNITUDES)
    assert errs.max() < 1e-4
    assert form.missing_residual < 1e-4
    ident = abs(abs(scenarios.THREE_QUBIT_LAST_COMPONENT) - 0.0411138)
    assert ident < 1e-6
    capsys.readouterr()
    report(6, f"magnitudes within {errs.max():.2e}, missing {form.missing_residual:.2e}")


def test_criterion_07_extra_phase_example():
    """Pipeline exposes the -i intermediate phase and removes it."""
    psi = scenarios.extra_phase_state()
    form = extract_schmidt(psi, cfg=FlowConfig(seed=0))
    t = form.diagonalizer.matrix()
    intermediate = t.conj().T @ to_density(psi) @ t
    arg = np.angle(intermediate[0, 3])
    assert abs(arg + np.pi / 2) < 1e-6
    err = np.abs(to_density(form.canonical_state) - schmidt_state_2q(np.pi / 4)).max()
    assert err < 1e-6
    report(7, f"intermediate arg {arg:.9f}, final error {err:.2e}")


def test_criterion_08_three_qubit_oracle_cross_validation():
    """extract_schmidt lambda_1 agrees with the rank-1 tensor oracle."""
    t0 = time.monotonic()
    rng = np.random.default_rng(8008)
    checked = 0
    worst = 0.0
    attempts = 0
    while checked < 50:
        attempts += 1
        psi = random_state(3, rng)
        form = extract_schmidt(psi, cfg=FlowConfig(seed=attempts))
        lam = np.asarray(form.lambdas)
        if lam[0] - lam[1:].max() <= 0.05:
            continue
        lam_oracle, _ = rank1_oracle_nq(psi, restarts=12, seed=attempts)
        err = abs(lam[0] - lam_oracle)
        assert err < 1e-6, (attempts, err)
        worst = max(worst, err)
        checked += 1
    elapsed = time.monotonic() - t0
    assert elapsed < 120.0, f"runtime {elapsed:.1f}s exceeds 120s"
    report(8, f"50 states ({attempts} sampled), worst |dlambda| = {worst:.2e}, {elapsed:.1f}s")


def test_criterion_09_property_suites():
    """Projector idempotence, gradient oracle, unitarity drift, invariances."""
    rng = np.random.default_rng(9009)

    # projector idempotence and contraction
    for _ in range(500):
        n = 2 if rng.integers(2) == 0 else 3
        z = rng.normal(size=(2**n, 2**n)) + 1j * rng.normal(size=(2**n, 2**n))
        a = z - z.conj().T
        p = project_local(a)
        assert np.abs(project_local(p) - p).max() < 1e-12
        assert np.linalg.norm(p) <= np.linalg.norm(a) + 1e-12

    # gradient against finite differences, relative error < 1e-4
    basis = local_tangent_basis(2)
    for _ in range(50):
        rho0 = to_density(random_state(2, rng))
        rhoT = to_density(random_state(2, rng))
        z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        u = expm_antihermitian(z - z.conj().T)
        a = sum(c * b for c, b in zip(rng.normal(size=6), basis))
        g = gradient_local(rho0, u, rhoT)
        pairing = np.trace(g.conj().T @ a).real
        t = 1e-5
        slope = (
            fidelity(rho0, u @ expm_antihermitian(t * a), rhoT)
            - fidelity(rho0, u @ expm_antihermitian(-t * a), rhoT)
        ) / (2 * t)
        if abs(slope) > 1e-3:
            assert abs(slope - pairing) / abs(slope) < 1e-4

    # unitarity drift over 1e4 composed steps
    rho0 = to_density(random_state(2, rng))
    rhoT = schmidt_state_2q(np.pi / 4)
    u = np.eye(4, dtype=complex)
    for _ in range(10000):
        u, _ = flow_step(u, rho0, rhoT, 0.05)
    drift = np.linalg.norm(u.conj().T @ u - np.eye(4))
    assert drift < 1e-9

    # local-unitary invariance of the fidelity
    for _ in range(10):
        rho0 = to_density(random_state(2, rng))
        rhoT = to_density(random_state(2, rng))
        z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        u = expm_antihermitian(z - z.conj().T)
        v = random_local_unitary(2, rng)
        f1 = fidelity(rho0, u, rhoT)
        f2 = fidelity(v @ rho0 @ v.conj().T, v @ u @ v.conj().T, v @ rhoT @ v.conj().T)
        assert abs(f1 - f2) < 1e-12

    # local-unitary invariance of the Bures value
    psi = scenarios.three_qubit_example_state()
    base = bures_entanglement_nq(extract_schmidt(psi, cfg=FlowConfig(seed=0)))
    for seed in range(3):
        v = random_local_unitary(3, rng)
        form = extract_schmidt(v @ psi, cfg=FlowConfig(seed=seed))
        assert abs(bures_entanglement_nq(form) - base) < 1e-6

    report(9, f"all property suites green, drift {drift:.2e}")


def test_criterion_10_degenerate_targets():
    """Targets theta in {0, pi/2, pi} end short of the oracle Schmidt state."""
    rho0 = to_density(scenarios.entangled_initial_state())
    oracle = scenarios.entangled_oracle_schmidt_state()
    results = []
    for theta in (0.0, np.pi / 2, np.pi):
        trace = run_flow(rho0, schmidt_state_2q(theta), cfg=FlowConfig(seed=0))
        assert trace.outcome != CONVERGED_MAX, (theta, trace.outcome)
        lim = limiting_state(trace, rho0)
        fid_schmidt = np.trace(lim @ oracle).real
        assert fid_schmidt < 1.0 - 1e-3, (theta, fid_schmidt)
        results.append((theta, trace.outcome, fid_schmidt))
    detail = "; ".join(f"theta={t:.3f}: {o}, F_schmidt={f:.4f}" for t, o, f in results)
    report(10, detail)
