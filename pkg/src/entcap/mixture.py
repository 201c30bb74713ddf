"""Symmetrized mixtures of product states and their entropy gap.

For states sigma, rho on the same space, the mixture places a block of m
copies of sigma at each of the n cyclic positions among n - 1 copies of
rho and averages. The gap S(mixture) - (n-1) S(rho) - m S(sigma)
approaches m times the relative entropy S(sigma || rho) as n grows, and
the residual tracked here is the distance still to go.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import umegaki_relative_entropy, von_neumann_entropy
from .linalg import (
    DEFAULT_SIZE_CAP,
    check_density,
    check_size_cap,
    tensor_power,
)


@dataclass(frozen=True)
class GapRecord:
    """One point of the convergence series.

    residual is m * target - gap; it is math.inf when the support of
    sigma leaks outside the support of rho (infinite target).
    """

    n: int
    gap: float
    residual: float
    target: float


def build_mixture(sigma: np.ndarray, rho: np.ndarray, m: int = 1, n: int = 2,
                  size_cap: int = DEFAULT_SIZE_CAP) -> np.ndarray:
    """Average of the n cyclic placements of sigma^{(x) m} among rho copies.

    Returns a density matrix of dimension d ** (m + n - 1); raises
    SizeCapError before allocating anything above size_cap.
    """
    sigma = check_density(np.asarray(sigma, dtype=complex), "sigma")
    rho = check_density(np.asarray(rho, dtype=complex), "rho")
    if sigma.shape != rho.shape:
        raise ValueError(f"shape mismatch: {sigma.shape} vs {rho.shape}")
    if m < 1 or n < 1:
        raise ValueError(f"need m >= 1 and n >= 1, got m={m}, n={n}")
    d = rho.shape[0]
    dim = d ** (m + n - 1)
    check_size_cap(dim, size_cap, f"the (m={m}, n={n}) symmetrized mixture")

    block = tensor_power(sigma, m)
    acc = np.zeros((dim, dim), dtype=complex)
    for k in range(n):
        term = block
        if k:
            term = np.kron(tensor_power(rho, k), term)
        if n - 1 - k:
            term = np.kron(term, tensor_power(rho, n - 1 - k))
        acc += term
    acc /= n
    return acc


def entropy_gap(sigma: np.ndarray, rho: np.ndarray, m: int = 1, n: int = 2,
                size_cap: int = DEFAULT_SIZE_CAP) -> GapRecord:
    """Entropy gap of the mixture at one n, with target and residual."""
    mixed = build_mixture(sigma, rho, m=m, n=n, size_cap=size_cap)
    gap = (von_neumann_entropy(mixed)
           - (n - 1) * von_neumann_entropy(rho)
           - m * von_neumann_entropy(sigma))
    target = umegaki_relative_entropy(sigma, rho)
    residual = m * target - gap if math.isfinite(target) else math.inf
    return GapRecord(n=n, gap=gap, residual=residual, target=target)


def convergence_series(sigma: np.ndarray, rho: np.ndarray, m: int = 1,
                       n_max: int = 8,
                       size_cap: int = DEFAULT_SIZE_CAP) -> list[GapRecord]:
    """Gap records for n = 1 .. n_max (n = 1 is the pure sigma block, gap 0)."""
    if n_max < 1:
        raise ValueError(f"need n_max >= 1, got {n_max}")
    return [entropy_gap(sigma, rho, m=m, n=n, size_cap=size_cap)
            for n in range(1, n_max + 1)]


def identity_residual(sigma: np.ndarray, rho: np.ndarray, n: int = 2,
                      size_cap: int = DEFAULT_SIZE_CAP) -> float:
    """Check the exact identity behind the m = 1 limit at finite n.

    S(R_n || rho^{(x) n}) equals -S(R_n) + (n-1) S(rho) + S(sigma||rho)
    + S(sigma) whenever sigma is supported inside rho. Both sides are
    evaluated independently (left as a single relative entropy on the
    product space, right from the scalar pieces) and the absolute
    difference comes back; it should sit at numerical noise level.
    """
    target = umegaki_relative_entropy(sigma, rho)
    if not math.isfinite(target):
        raise ValueError(
            "identity needs sigma supported inside rho; the relative "
            "entropy is infinite here"
        )
    mixed = build_mixture(sigma, rho, m=1, n=n, size_cap=size_cap)
    lhs = umegaki_relative_entropy(mixed, tensor_power(rho, n))
    rhs = (-von_neumann_entropy(mixed)
           + (n - 1) * von_neumann_entropy(rho)
           + target
           + von_neumann_entropy(sigma))
    return abs(lhs - rhs)
