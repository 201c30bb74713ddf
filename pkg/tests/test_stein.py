import math

import numpy as np
import pytest

from conftest import diagonal_pair_bank
from entcap.entropy import umegaki_relative_entropy
from entcap.linalg import SizeCapError
from entcap.rand import generator, random_density
from entcap import stein
from oracles import np_errors


def test_identity_projection_accepts_everything():
    rng = generator(81)
    rho0 = random_density(2, rng)
    rho1 = random_density(2, rng)
    proj = stein.TestProjection(op=np.eye(4, dtype=complex), n_copies=2)
    err = stein.test_errors(proj, rho0, rho1)
    assert abs(err.alpha - 0.0) <= 1e-14
    assert abs(err.beta - 1.0) <= 1e-14


def test_zero_projection_rejects_everything():
    rng = generator(82)
    rho0 = random_density(2, rng)
    rho1 = random_density(2, rng)
    proj = stein.TestProjection(op=np.zeros((4, 4), dtype=complex), n_copies=2)
    err = stein.test_errors(proj, rho0, rho1)
    assert abs(err.alpha - 1.0) <= 1e-14
    assert abs(err.beta - 0.0) <= 1e-14


def test_equal_states_leave_nothing_above_threshold():
    rho = random_density(2, generator(83))
    proj = stein.np_test_projection(rho, rho, 3, threshold=1.0)
    err = stein.test_errors(proj, rho, rho)
    assert abs(err.alpha - 1.0) <= 1e-12
    assert abs(err.beta - 0.0) <= 1e-12


def test_tiny_threshold_accepts_everything():
    rng = generator(88)
    rho0 = random_density(2, rng)
    rho1 = random_density(2, rng)
    proj = stein.np_test_projection(rho0, rho1, 2, threshold=1e-9)
    assert np.max(np.abs(proj.op - np.eye(4))) <= 1e-12
    err = stein.test_errors(proj, rho0, rho1)
    assert abs(err.alpha - 0.0) <= 1e-12
    assert abs(err.beta - 1.0) <= 1e-12


def test_threshold_trades_alpha_against_beta():
    rng = generator(89)
    rho0 = random_density(2, rng)
    rho1 = random_density(2, rng)
    errs = [stein.test_errors(stein.np_test_projection(rho0, rho1, 3, t),
                              rho0, rho1)
            for t in (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)]
    for lo, hi in zip(errs, errs[1:]):
        assert hi.alpha >= lo.alpha - 1e-10
        assert hi.beta <= lo.beta + 1e-10


def test_projection_is_a_projection():
    rng = generator(84)
    rho0 = random_density(2, rng)
    rho1 = random_density(2, rng)
    proj = stein.np_test_projection(rho0, rho1, 3, threshold=math.exp(0.3))
    e = proj.op
    assert np.max(np.abs(e @ e - e)) <= 1e-10
    assert np.max(np.abs(e - e.conj().T)) <= 1e-12


def test_beta_guarantee_at_every_copy_count():
    rng = generator(85)
    rho0 = random_density(2, rng)
    rho1 = random_density(2, rng)
    rate = 0.4 * umegaki_relative_entropy(rho0, rho1)
    for n in range(1, 7):
        proj = stein.np_test_projection(rho0, rho1, n, math.exp(n * rate))
        err = stein.test_errors(proj, rho0, rho1)
        assert err.beta <= math.exp(-n * rate) + 1e-12


def test_commuting_case_matches_classical_oracle():
    for p0, p1 in diagonal_pair_bank(5, 2):
        rho0 = np.diag(p0).astype(complex)
        rho1 = np.diag(p1).astype(complex)
        rate = 0.5 * float(np.sum(p0 * (np.log(p0) - np.log(p1))))
        for n in (1, 3, 6):
            threshold = math.exp(n * rate)
            proj = stein.np_test_projection(rho0, rho1, n, threshold)
            err = stein.test_errors(proj, rho0, rho1)
            alpha, beta = np_errors(p0, p1, n, threshold)
            assert abs(err.alpha - alpha) <= 1e-10
            assert abs(err.beta - beta) <= 1e-10


def test_exponent_series_reaches_the_rate():
    p0, p1 = diagonal_pair_bank(5, 1)[0]
    rho0 = np.diag(p0).astype(complex)
    rho1 = np.diag(p1).astype(complex)
    rate = 0.5 * float(np.sum(p0 * (np.log(p0) - np.log(p1))))
    series = stein.exponent_series(rho0, rho1, rate, 8)
    assert [r.n_copies for r in series] == list(range(1, 9))
    for rec in series:
        if np.max(np.abs(rec.alpha - 1.0)) > 1e-12:  # test is nontrivial
            assert rec.beta_exponent >= rate - 1e-9
    assert series[7].alpha < series[3].alpha


def test_exponent_series_rejects_rates_outside_stein_window():
    rng = generator(86)
    rho0 = random_density(2, rng)
    rho1 = random_density(2, rng)
    s = umegaki_relative_entropy(rho0, rho1)
    with pytest.raises(ValueError):
        stein.exponent_series(rho0, rho1, 0.0, 4)
    with pytest.raises(ValueError):
        stein.exponent_series(rho0, rho1, 1.1 * s, 4)


def test_beta_underflow_is_flagged():
    # the second state is numerically singular, so every rate is in play
    # and beta crosses the smallest normal float almost immediately
    rho0 = np.diag([0.5, 0.5]).astype(complex)
    rho1 = np.diag([1.0 - 1e-306, 1e-306]).astype(complex)
    series = stein.exponent_series(rho0, rho1, 345.0, 2)
    assert series[-1].underflow
    assert math.isinf(series[-1].beta_exponent)


def test_size_cap_blocks_large_copy_counts():
    rng = generator(87)
    rho0 = random_density(2, rng)
    rho1 = random_density(2, rng)
    with pytest.raises(SizeCapError):
        stein.np_test_projection(rho0, rho1, 13, threshold=2.0)
