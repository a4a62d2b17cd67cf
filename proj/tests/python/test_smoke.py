import math

import numpy as np
import pytest

import qsuff


def diag(*probs):
    return np.diag(np.asarray(probs, dtype=complex))


RHO = diag(0.75, 0.25)
SIGMA = diag(0.5, 0.5)
KL_ORACLE = 0.75 * math.log(1.5) + 0.25 * math.log(0.5)


def haar_unitary(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_relative_entropy_both_routes():
    assert qsuff.relative_entropy_spectral(RHO, SIGMA) == pytest.approx(KL_ORACLE, abs=1e-10)
    value, err = qsuff.relative_entropy_integral(RHO, SIGMA)
    assert value == pytest.approx(KL_ORACLE, abs=1e-6)
    assert err >= 0.0


def test_support_violation_is_inf():
    assert math.isinf(qsuff.relative_entropy_spectral(diag(1, 0), diag(0, 1)))
    assert math.isinf(qsuff.d_max(diag(1, 0), diag(0, 1)))


def test_dmax_and_report():
    report = qsuff.divergence_report(RHO, SIGMA)
    assert report["d_max_rho_sigma"] == pytest.approx(math.log(1.5), abs=1e-10)
    assert report["d_max_sigma_rho"] == pytest.approx(math.log(2.0), abs=1e-10)
    assert report["d_omega"] == pytest.approx(math.log(3.0), abs=1e-9)


def test_fidelity_matches_bhattacharyya():
    assert qsuff.fidelity(RHO, SIGMA) == pytest.approx(
        math.sqrt(0.375) + math.sqrt(0.125), abs=1e-12
    )


def test_sweep_is_dpi_monotone():
    depol = [
        math.sqrt(0.625) * np.eye(2, dtype=complex),
        math.sqrt(0.125) * np.array([[0, 1], [1, 0]], dtype=complex),
        math.sqrt(0.125) * np.array([[0, -1j], [1j, 0]], dtype=complex),
        math.sqrt(0.125) * np.array([[1, 0], [0, -1]], dtype=complex),
    ]
    sigma = np.array([[0.5, 0.2], [0.2, 0.5]], dtype=complex)
    grid = qsuff.default_s_grid(RHO, sigma, count=129)
    eps = qsuff.deficiency_epsilon(RHO, sigma, depol, grid)
    assert eps > 0.0
    image_rho = qsuff.apply_channel(depol, RHO)
    image_sigma = qsuff.apply_channel(depol, sigma)
    for point, image in zip(
        qsuff.sweep_curves(RHO, sigma, grid), qsuff.sweep_curves(image_rho, image_sigma, grid)
    ):
        assert image["l1"] <= point["l1"] + 1e-9


def test_petz_reverses_a_unitary_channel():
    rng = np.random.default_rng(7)
    u = haar_unitary(rng, 2)
    recovery = qsuff.petz_kraus([u], SIGMA)
    probe = np.array([[0.6, 0.1], [0.1, 0.4]], dtype=complex)
    image = qsuff.apply_channel([u], probe)
    recovered = qsuff.apply_channel(recovery, image)
    assert np.allclose(recovered, probe, atol=1e-10)


def test_universal_recovery_restores_sigma():
    rng = np.random.default_rng(11)
    u = haar_unitary(rng, 2)
    kraus = [u]
    sigma = np.array([[0.7, 0.1], [0.1, 0.3]], dtype=complex)
    choi = qsuff.universal_recovery_choi(kraus, sigma)
    image = qsuff.apply_channel(kraus, sigma)
    # contract the Choi matrix against the image state by hand
    d = 2
    recovered = np.zeros((d, d), dtype=complex)
    for k in range(d):
        for l in range(d):
            for i in range(d):
                for j in range(d):
                    recovered[k, l] += choi[k * d + i, l * d + j] * image[i, j]
    assert np.allclose(recovered, sigma, atol=1e-7)


def test_verdicts():
    depol = [
        math.sqrt(0.625) * np.eye(2, dtype=complex),
        math.sqrt(0.125) * np.array([[0, 1], [1, 0]], dtype=complex),
        math.sqrt(0.125) * np.array([[0, -1j], [1j, 0]], dtype=complex),
        math.sqrt(0.125) * np.array([[1, 0], [0, -1]], dtype=complex),
    ]
    sigma = np.array([[0.5, 0.2], [0.2, 0.5]], dtype=complex)
    grid = qsuff.default_s_grid(RHO, sigma)
    report = qsuff.sufficiency_report(RHO, sigma, depol, grid)
    assert report["verdict"] == "not-sufficient"
    assert report["entropy_gap"] > 1e-3

    identity = [np.eye(2, dtype=complex)]
    clean = qsuff.sufficiency_report(RHO, sigma, identity, grid)
    assert clean["verdict"] == "sufficient"

    recovery = qsuff.recovery_report(RHO, sigma, depol, grid)
    assert recovery["chain_slacks"][0] >= -1e-7
    assert recovery["chain_slacks"][1] >= -1e-7
    assert recovery["recovered_trace_distance"] <= recovery["bound_3_2"] + 1e-6


def test_validation_errors_surface_as_value_error():
    with pytest.raises(ValueError):
        qsuff.relative_entropy_spectral(np.eye(2, dtype=complex), SIGMA)  # trace 2
    with pytest.raises(ValueError):
        qsuff.apply_channel([0.5 * np.eye(2, dtype=complex)], RHO)  # not trace preserving
