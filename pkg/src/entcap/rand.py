"""Seeded generators for the random inputs used by checks and tests."""

from __future__ import annotations

import numpy as np


def generator(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.conj().T)


def random_density(dim: int, rng: np.random.Generator,
                   rank: int | None = None) -> np.ndarray:
    """Density matrix Z Z^dagger / Tr(Z Z^dagger) with Gaussian Z.

    rank bounds the column count of Z, so rank < dim gives a state whose
    support is a proper subspace (up to measure zero, exactly rank).
    """
    r = dim if rank is None else rank
    if not 1 <= r <= dim:
        raise ValueError(f"rank must be in [1, {dim}], got {r}")
    z = rng.standard_normal((dim, r)) + 1j * rng.standard_normal((dim, r))
    rho = z @ z.conj().T
    rho /= rho.trace().real
    return 0.5 * (rho + rho.conj().T)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Eigenvector matrix of a random Hermitian; Haar-like is good enough here."""
    from .linalg import eigh

    return eigh(random_hermitian(dim, rng)).eigenvectors


def random_projective_povm(dim: int, outcomes: int,
                           rng: np.random.Generator) -> list[np.ndarray]:
    """Projective POVM from grouping eigenvectors of a random Hermitian.

    The eigenbasis columns are split into `outcomes` contiguous groups,
    each spanning one projector, so completeness holds to rounding.
    """
    if not 1 <= outcomes <= dim:
        raise ValueError(f"outcomes must be in [1, {dim}], got {outcomes}")
    basis = random_unitary(dim, rng)
    edges = np.linspace(0, dim, outcomes + 1).astype(int)
    ops = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        block = basis[:, lo:hi]
        ops.append(block @ block.conj().T)
    return ops


def random_probability_vector(k: int, rng: np.random.Generator) -> np.ndarray:
    w = rng.exponential(size=k)
    return w / w.sum()
