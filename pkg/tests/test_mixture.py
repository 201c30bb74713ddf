import math

import numpy as np
import pytest

from entcap.entropy import umegaki_relative_entropy
from entcap.linalg import SizeCapError
from entcap.mixture import build_mixture, convergence_series, entropy_gap, identity_residual
from entcap.rand import generator, random_density


def test_two_copy_mixture_is_symmetrized_product(qubit_pair):
    sigma, rho = qubit_pair
    got = build_mixture(sigma, rho, 1, 2)
    expected = 0.5 * (np.kron(sigma, rho) + np.kron(rho, sigma))
    assert np.max(np.abs(got - expected)) <= 1e-14


def test_mixture_is_density(qubit_pair):
    sigma, rho = qubit_pair
    r = build_mixture(sigma, rho, 1, 4)
    assert r.shape == (16, 16)
    assert abs(np.trace(r).real - 1.0) <= 1e-12
    assert np.max(np.abs(r - r.conj().T)) <= 1e-14
    assert np.linalg.eigvalsh(r).min() >= -1e-12


def test_mixture_cyclic_shift_invariance(qubit_pair):
    # conjugating by the cyclic shift of tensor factors must fix R
    sigma, rho = qubit_pair
    n = 4
    r = build_mixture(sigma, rho, 1, n)
    perm = [(k + 1) % n for k in range(n)]
    shifted = (
        r.reshape([2] * (2 * n))
        .transpose(perm + [n + p for p in perm])
        .reshape(2**n, 2**n)
    )
    assert np.max(np.abs(shifted - r)) <= 1e-10


def test_wider_signal_block():
    rng = generator(41)
    sigma = random_density(2, rng)
    rho = random_density(2, rng)
    r = build_mixture(sigma, rho, 2, 3)
    assert r.shape == (16, 16)
    assert abs(np.trace(r).real - 1.0) <= 1e-12
    rec = entropy_gap(sigma, rho, 2, 3)
    assert rec.gap >= -1e-9


def test_identity_residual_qubits():
    rng = generator(42)
    sigma = random_density(2, rng)
    rho = random_density(2, rng)
    assert identity_residual(sigma, rho, 4) <= 1e-8


def test_identity_residual_commuting():
    sigma = np.diag([0.3, 0.7]).astype(complex)
    rho = np.diag([0.6, 0.4]).astype(complex)
    assert identity_residual(sigma, rho, 5) <= 1e-8


def test_identity_residual_rejects_infinite_target():
    sigma = np.diag([0.5, 0.5]).astype(complex)
    rho = np.diag([1.0, 0.0]).astype(complex)
    with pytest.raises(ValueError):
        identity_residual(sigma, rho, 3)


def test_equal_states_close_the_gap():
    rho = random_density(2, generator(43))
    for rec in convergence_series(rho, rho, n_max=5):
        assert abs(rec.gap) <= 1e-12
        assert abs(rec.residual) <= 1e-12


def test_gap_stays_between_zero_and_target():
    rng = generator(44)
    for _ in range(5):
        sigma = random_density(2, rng)
        rho = random_density(2, rng)
        target = umegaki_relative_entropy(sigma, rho)
        for rec in convergence_series(sigma, rho, n_max=6):
            assert -1e-9 <= rec.gap <= target + 1e-9
            assert rec.residual >= -1e-9


def test_gap_approaches_the_relative_entropy():
    rng = generator(45)
    sigma = random_density(2, rng)
    rho = random_density(2, rng)
    series = convergence_series(sigma, rho, n_max=10)
    target = series[0].target
    assert abs(series[-1].gap - target) < abs(series[0].gap - target)


def test_singular_pair_gap_keeps_growing():
    sigma = np.diag([0.5, 0.5]).astype(complex)
    rho = np.diag([1.0, 0.0]).astype(complex)
    rec4 = entropy_gap(sigma, rho, 1, 4)
    rec8 = entropy_gap(sigma, rho, 1, 8)
    assert math.isinf(rec4.target)
    assert rec8.gap > rec4.gap


def test_size_cap_blocks_oversized_mixture():
    rng = generator(46)
    sigma = random_density(2, rng)
    rho = random_density(2, rng)
    with pytest.raises(SizeCapError):
        build_mixture(sigma, rho, 1, 14)


def test_build_mixture_rejects_bad_counts(qubit_pair):
    sigma, rho = qubit_pair
    with pytest.raises(ValueError):
        build_mixture(sigma, rho, 0, 3)
    with pytest.raises(ValueError):
        build_mixture(sigma, rho, 1, 0)
    # n = 1 is the degenerate single-placement case, R = sigma^m
    single = build_mixture(sigma, rho, 1, 1)
    assert np.max(np.abs(single - sigma)) <= 1e-14
