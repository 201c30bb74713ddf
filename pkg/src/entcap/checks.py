"""Seeded re-verification of the inequalities the library is built on.

Every check draws instances from one shared generator, measures how far
each asserted inequality (or identity) is violated, subtracts the
check's tolerance and keeps the maximum. worst_violation <= 0 therefore
means the check passed with margin, and the reported number says by how
much. Two runs with the same seed produce identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import codesim, commuting, cqchannel, mixture
from .entropy import (
    bs_relative_entropy,
    umegaki_relative_entropy,
    von_neumann_entropy,
)
from .linalg import eigh
from .rand import (
    generator,
    random_density,
    random_hermitian,
    random_probability_vector,
    random_projective_povm,
)
from .stein import exponent_series


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst_violation: float


def _result(name: str, violations: list[float]) -> CheckResult:
    worst = max(violations)
    return CheckResult(name=name, passed=worst <= 0.0,
                       worst_violation=float(worst))


def _check_eigh_reconstruction(rng) -> CheckResult:
    v = []
    for d in (2, 5, 9, 16):
        h = random_hermitian(d, rng)
        dec = eigh(h)
        recon = (dec.eigenvectors * dec.eigenvalues) @ dec.eigenvectors.conj().T
        scale = max(1.0, float(np.abs(h).max()))
        v.append(float(np.abs(recon - h).max()) / scale - 1e-10)
        gram = dec.eigenvectors.conj().T @ dec.eigenvectors
        v.append(float(np.abs(gram - np.eye(d)).max()) - 1e-10)
    return _result("eigh_reconstruction", v)


def _check_entropy_bounds(rng) -> CheckResult:
    v = []
    for d, rank in ((2, None), (3, None), (5, 2), (6, 1)):
        s = von_neumann_entropy(random_density(d, rng, rank=rank))
        v.append(-s - 1e-10)
        v.append(s - math.log(d) - 1e-10)
    return _result("entropy_bounds", v)


def _check_relative_entropy_nonnegative(rng) -> CheckResult:
    v = []
    for d in (2, 3, 4):
        sigma = random_density(d, rng)
        rho = random_density(d, rng)
        v.append(-umegaki_relative_entropy(sigma, rho) - 1e-10)
    return _result("relative_entropy_nonnegative", v)


def _check_bs_dominates_umegaki(rng) -> CheckResult:
    v = []
    for d in (2, 3, 4):
        omega = random_density(d, rng)
        rho = random_density(d, rng)
        v.append(umegaki_relative_entropy(omega, rho)
                 - bs_relative_entropy(omega, rho) - 1e-9)
    return _result("bs_dominates_umegaki", v)


def _check_mixture_residual_nonnegative(rng) -> CheckResult:
    # gap never overshoots the target: the leftover residual is a
    # relative entropy on the product space, hence nonnegative
    v = []
    for d, n in ((2, 2), (2, 3), (3, 2)):
        sigma = random_density(d, rng)
        rho = random_density(d, rng)
        rec = mixture.entropy_gap(sigma, rho, m=1, n=n)
        v.append(-rec.residual - 1e-9)
    return _result("mixture_residual_nonnegative", v)


def _check_mixture_identity(rng) -> CheckResult:
    v = []
    for d, n in ((2, 2), (2, 3), (3, 2)):
        sigma = random_density(d, rng)
        rho = random_density(d, rng)
        v.append(mixture.identity_residual(sigma, rho, n=n) - 1e-8)
    return _result("mixture_identity", v)


def _check_holevo_identity(rng) -> CheckResult:
    v = []
    for d, k in ((2, 3), (3, 3)):
        channel = cqchannel.CqChannel([random_density(d, rng) for _ in range(k)])
        p = random_probability_vector(k, rng)
        for ref in (np.eye(d) / d, cqchannel.output_state(channel, p)):
            v.append(cqchannel.holevo_identity_residual(channel, p, ref) - 1e-8)
    return _result("holevo_identity", v)


def _check_measured_info_below_holevo(rng) -> CheckResult:
    v = []
    for d, k, outcomes in ((3, 3, 3), (4, 2, 4), (4, 3, 2)):
        channel = cqchannel.CqChannel([random_density(d, rng) for _ in range(k)])
        p = random_probability_vector(k, rng)
        povm = cqchannel.Povm(random_projective_povm(d, outcomes, rng))
        mi = cqchannel.induced_mutual_information(channel, p, povm)
        v.append(-mi - 1e-12)
        v.append(mi - cqchannel.holevo_quantity(channel, p) - 1e-9)
    return _result("measured_info_below_holevo", v)


def _random_classical_pair(rng, d: int, dead: int) -> commuting.ClassicalPair:
    mu = random_probability_vector(d - dead, rng)
    mu = np.concatenate([mu, np.zeros(dead)])
    lam = random_probability_vector(d, rng)
    return commuting.ClassicalPair.from_weights(mu, lam)


def _check_commuting_matches_dense(rng) -> CheckResult:
    v = []
    for d, dead, n in ((2, 0, 3), (3, 0, 2), (3, 1, 3)):
        pair = _random_classical_pair(rng, d, dead)
        sigma, rho = pair.diagonal_states()
        dense = mixture.build_mixture(sigma, rho, m=1, n=n)
        dense_spectrum = np.sort(np.linalg.eigvalsh(dense))
        formula = np.sort(commuting.eigenvalues_by_formula(pair, n))
        v.append(float(np.abs(dense_spectrum - formula).max()) - 1e-10)
        v.append(abs(commuting.mixture_entropy(pair, n)
                     - von_neumann_entropy(dense)) - 1e-9)
    return _result("commuting_matches_dense", v)


def _check_qn_nonpositive(rng) -> CheckResult:
    v = []
    for d, n in ((2, 1), (2, 25), (3, 8)):
        pair = _random_classical_pair(rng, d, 0)
        qn = commuting.compute_qn(pair, n)
        v.append(qn - 1e-12)
        v.append(commuting.gap_regular(pair, n) - pair.target() - 1e-12)
    return _result("qn_nonpositive", v)


def _check_stein_beta_guarantee(rng) -> CheckResult:
    v = []
    for _ in range(2):
        rho0 = random_density(2, rng)
        rho1 = random_density(2, rng)
        rate = 0.4 * umegaki_relative_entropy(rho0, rho1)
        for rec in exponent_series(rho0, rho1, rate, n_max=4):
            v.append(rec.beta - math.exp(-rec.n_copies * rate) - 1e-12)
            v.append(-rec.alpha - 1e-12)
            v.append(rec.alpha - 1.0 - 1e-12)
    return _result("stein_beta_guarantee", v)


def _check_block_error_within_bound(rng) -> CheckResult:
    v = []
    rho0 = random_density(2, rng)
    rho1 = random_density(2, rng)
    rate = 0.4 * umegaki_relative_entropy(rho0, rho1)
    books = (cqchannel.weight_one_codebook(3),
             cqchannel.Codebook.from_words(("010", "101", "110")))
    for book in books:
        scheme = codesim.build_repetition_scheme(rho0, rho1, book,
                                                 n_repeats=3, rate=rate)
        report = codesim.error_report(scheme)
        v.append(report.max_error - report.bound - 1e-12)
        v.append(-min(report.per_word_error.values()) - 1e-12)
    return _result("block_error_within_bound", v)


_CHECKS = (
    _check_eigh_reconstruction,
    _check_entropy_bounds,
    _check_relative_entropy_nonnegative,
    _check_bs_dominates_umegaki,
    _check_mixture_residual_nonnegative,
    _check_mixture_identity,
    _check_holevo_identity,
    _check_measured_info_below_holevo,
    _check_commuting_matches_dense,
    _check_qn_nonpositive,
    _check_stein_beta_guarantee,
    _check_block_error_within_bound,
)


def run_all_checks(seed: int = 7) -> list[CheckResult]:
    """Run the whole bank on one seeded generator, in a fixed order."""
    rng = generator(seed)
    return [check(rng) for check in _CHECKS]
