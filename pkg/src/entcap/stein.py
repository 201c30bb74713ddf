"""Binary quantum hypothesis testing on product states.

The test operator is the projection onto the strictly positive part of
rho0^{(x) N} - e^{N r} rho1^{(x) N}. By construction its type-2 error is
at most e^{-N r}, and for rates r below the relative entropy
S(rho0 || rho1) the type-1 error goes to zero with N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import umegaki_relative_entropy
from .linalg import (
    DEFAULT_SIZE_CAP,
    check_density,
    check_size_cap,
    eigh,
    tensor_power,
    trace_product,
)

TIE_TOL = 1e-12
BETA_UNDERFLOW = 1e-300


@dataclass(frozen=True)
class TestProjection:
    """Acceptance projection of a binary test on the N-copy space."""

    op: np.ndarray
    n_copies: int


@dataclass(frozen=True)
class TestErrors:
    """Type-1 error (false rejection of rho0) and type-2 error (false
    acceptance under rho1)."""

    alpha: float
    beta: float


@dataclass(frozen=True)
class ExponentRecord:
    """One row of the error-exponent series.

    beta_exponent is -ln(beta)/N, or math.inf with underflow set when
    beta fell below 1e-300 and the logarithm is no longer meaningful.
    """

    n_copies: int
    alpha: float
    beta: float
    beta_exponent: float
    rate: float
    underflow: bool


def _product_pair(rho0: np.ndarray, rho1: np.ndarray, n_copies: int,
                  size_cap: int) -> tuple[np.ndarray, np.ndarray]:
    rho0 = check_density(np.asarray(rho0, dtype=complex), "rho0")
    rho1 = check_density(np.asarray(rho1, dtype=complex), "rho1")
    if rho0.shape != rho1.shape:
        raise ValueError(f"shape mismatch: {rho0.shape} vs {rho1.shape}")
    if n_copies < 1:
        raise ValueError(f"need n_copies >= 1, got {n_copies}")
    dim = rho0.shape[0] ** n_copies
    check_size_cap(dim, size_cap, f"the {n_copies}-copy test space")
    return tensor_power(rho0, n_copies), tensor_power(rho1, n_copies)


def np_test_projection(rho0: np.ndarray, rho1: np.ndarray, n_copies: int,
                       threshold: float, size_cap: int = DEFAULT_SIZE_CAP,
                       tie_tol: float = TIE_TOL) -> TestProjection:
    """Projection onto the strictly positive part of R0 - threshold R1.

    Eigenvalues within tie_tol of zero are excluded, so ties break
    toward rejection; that keeps beta <= 1/threshold exact rather than
    merely approximate.
    """
    if not (threshold > 0.0 and math.isfinite(threshold)):
        raise ValueError(f"threshold must be positive and finite, got {threshold!r}")
    if not tie_tol >= 0.0:
        raise ValueError(f"tie_tol must be nonnegative, got {tie_tol!r}")
    r0, r1 = _product_pair(rho0, rho1, n_copies, size_cap)
    diff = r0 - threshold * r1
    del r0, r1
    dec = eigh(diff, name="test operator")
    del diff
    keep = dec.eigenvalues > tie_tol
    vectors = dec.eigenvectors[:, keep]
    op = vectors @ vectors.conj().T
    return TestProjection(op=op, n_copies=n_copies)


def test_errors(proj: TestProjection, rho0: np.ndarray, rho1: np.ndarray,
                size_cap: int = DEFAULT_SIZE_CAP) -> TestErrors:
    """Both error probabilities of a test projection, clipped to [0, 1]."""
    r0, r1 = _product_pair(rho0, rho1, proj.n_copies, size_cap)
    if r0.shape != proj.op.shape:
        raise ValueError(
            f"projection dimension {proj.op.shape[0]} does not match "
            f"{proj.n_copies} copies of a {rho0.shape[0]}-level state"
        )
    alpha = 1.0 - trace_product(r0, proj.op).real
    beta = trace_product(r1, proj.op).real
    clip = lambda v: min(max(v, 0.0), 1.0)
    return TestErrors(alpha=clip(alpha), beta=clip(beta))


def exponent_series(rho0: np.ndarray, rho1: np.ndarray, rate: float,
                    n_max: int, size_cap: int = DEFAULT_SIZE_CAP,
                    tie_tol: float = TIE_TOL) -> list[ExponentRecord]:
    """Error series for N = 1 .. n_max at a fixed rate.

    The rate must sit strictly between 0 and S(rho0 || rho1); outside
    that band the type-1 error has no reason to decay and the series is
    not the regime this function reports on.
    """
    if n_max < 1:
        raise ValueError(f"need n_max >= 1, got {n_max}")
    limit = umegaki_relative_entropy(np.asarray(rho0, dtype=complex),
                                     np.asarray(rho1, dtype=complex))
    if not 0.0 < rate < limit:
        raise ValueError(
            f"rate {rate!r} outside (0, {limit!r}) = (0, S(rho0||rho1))"
        )
    records = []
    for n in range(1, n_max + 1):
        proj = np_test_projection(rho0, rho1, n, math.exp(n * rate),
                                  size_cap=size_cap, tie_tol=tie_tol)
        err = test_errors(proj, rho0, rho1, size_cap=size_cap)
        if err.beta < BETA_UNDERFLOW:
            exponent, underflow = math.inf, True
        else:
            exponent, underflow = -math.log(err.beta) / n, False
        records.append(ExponentRecord(
            n_copies=n, alpha=err.alpha, beta=err.beta,
            beta_exponent=exponent, rate=rate, underflow=underflow,
        ))
    return records
