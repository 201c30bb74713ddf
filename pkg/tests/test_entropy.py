import math

import numpy as np
import pytest

from entcap.entropy import (
    bs_relative_entropy,
    classical_relative_entropy,
    eta,
    shannon_entropy,
    support_within,
    umegaki_relative_entropy,
    von_neumann_entropy,
)
from entcap.rand import generator, random_density, random_probability_vector, random_unitary
from oracles import kl, logm_entropy, logm_relative_entropy


def test_eta_values():
    assert eta(0.0) == 0.0
    assert eta(1.0) == 0.0
    assert abs(eta(1.0 / math.e) - 1.0 / math.e) <= 1e-15


def test_eta_rejects_negative():
    with pytest.raises(ValueError):
        eta(-0.1)


def test_shannon_entropy_values():
    assert abs(shannon_entropy([0.5, 0.5]) - math.log(2)) <= 1e-15
    # -0.7 ln 0.7 - 0.3 ln 0.3
    assert abs(shannon_entropy([0.7, 0.3]) - 0.6108643) <= 1e-6
    with pytest.raises(ValueError):
        shannon_entropy([1.2, -0.2])


def test_von_neumann_matches_diagonal_weights():
    rho = np.diag([0.7, 0.3]).astype(complex)
    assert abs(von_neumann_entropy(rho) - shannon_entropy([0.7, 0.3])) <= 1e-14


def test_von_neumann_unitary_invariance():
    rng = generator(21)
    rho = random_density(4, rng)
    u = random_unitary(4, rng)
    rotated = u @ rho @ u.conj().T
    assert abs(von_neumann_entropy(rotated) - von_neumann_entropy(rho)) <= 1e-11


def test_von_neumann_against_logm():
    rng = generator(22)
    for dim in (2, 3, 5):
        rho = random_density(dim, rng)
        assert abs(von_neumann_entropy(rho) - logm_entropy(rho)) <= 1e-11


def test_classical_relative_entropy_against_scipy():
    rng = generator(23)
    p = random_probability_vector(4, rng)
    q = random_probability_vector(4, rng)
    assert abs(classical_relative_entropy(p, q) - kl(p, q)) <= 1e-13


def test_classical_relative_entropy_support_violation():
    assert math.isinf(classical_relative_entropy([0.5, 0.5], [1.0, 0.0]))


def test_umegaki_pure_versus_maximally_mixed():
    sigma = np.diag([1.0, 0.0]).astype(complex)
    rho = np.diag([0.5, 0.5]).astype(complex)
    assert abs(umegaki_relative_entropy(sigma, rho) - math.log(2)) <= 1e-12


def test_umegaki_against_logm():
    rng = generator(24)
    for dim in (2, 3, 4):
        sigma = random_density(dim, rng)
        rho = random_density(dim, rng)
        got = umegaki_relative_entropy(sigma, rho)
        assert abs(got - logm_relative_entropy(sigma, rho)) <= 1e-10


def test_umegaki_unitary_invariance():
    rng = generator(25)
    sigma = random_density(3, rng)
    rho = random_density(3, rng)
    u = random_unitary(3, rng)
    rotated = umegaki_relative_entropy(u @ sigma @ u.conj().T, u @ rho @ u.conj().T)
    assert abs(rotated - umegaki_relative_entropy(sigma, rho)) <= 1e-10


def test_umegaki_additivity_under_tensor_power():
    rng = generator(26)
    sigma = random_density(2, rng)
    rho = random_density(2, rng)
    single = umegaki_relative_entropy(sigma, rho)
    double = umegaki_relative_entropy(np.kron(sigma, sigma), np.kron(rho, rho))
    assert abs(double - 2.0 * single) <= 1e-10


def test_umegaki_support_violation_is_infinite():
    sigma = np.diag([1.0, 0.0]).astype(complex)
    rho = np.diag([0.0, 1.0]).astype(complex)
    assert math.isinf(umegaki_relative_entropy(sigma, rho))
    assert not support_within(sigma, rho)


def test_bs_matches_umegaki_when_commuting():
    sigma = np.diag([0.3, 0.7]).astype(complex)
    rho = np.diag([0.6, 0.4]).astype(complex)
    u = umegaki_relative_entropy(sigma, rho)
    b = bs_relative_entropy(sigma, rho)
    expected = 0.3 * math.log(0.3 / 0.6) + 0.7 * math.log(0.7 / 0.4)
    assert abs(u - expected) <= 1e-12
    assert abs(b - u) <= 1e-12


def test_bs_dominates_umegaki():
    rng = generator(27)
    for dim in (2, 3, 4):
        for _ in range(10):
            sigma = random_density(dim, rng)
            rho = random_density(dim, rng)
            u = umegaki_relative_entropy(sigma, rho)
            b = bs_relative_entropy(sigma, rho)
            assert u <= b + 1e-9


def test_bs_support_violation_is_infinite():
    sigma = np.diag([0.5, 0.5]).astype(complex)
    rho = np.diag([1.0, 0.0]).astype(complex)
    assert math.isinf(bs_relative_entropy(sigma, rho))


def test_relative_entropy_zero_on_equal_states():
    rng = generator(28)
    rho = random_density(3, rng)
    assert abs(umegaki_relative_entropy(rho, rho)) <= 1e-11
    assert abs(bs_relative_entropy(rho, rho)) <= 1e-10
