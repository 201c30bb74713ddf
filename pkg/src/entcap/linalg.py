"""Dense Hermitian linear algebra helpers.

Everything downstream works with explicit complex matrices, so this module
pins down the conventions once: row-major Kronecker blocks, descending
eigenvalue order with a deterministic eigenvector phase, and spectral
matrix functions with an explicit policy for eigenvalues that are zero up
to rounding.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np
import scipy.linalg

HERMITIAN_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-10
DEFAULT_SIZE_CAP = 4096

_PHASE_TOL = 1e-12


class SizeCapError(ValueError):
    """Raised when a computation would materialize a matrix above the cap."""


def check_size_cap(dim: int, size_cap: int, what: str) -> None:
    """Raise SizeCapError unless a dim x dim matrix is within the cap."""
    if dim > size_cap:
        raise SizeCapError(
            f"{what} needs a {dim} x {dim} matrix, above the size cap "
            f"{size_cap}; raise the cap or shrink the problem"
        )


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with row-major block layout.

    Entry convention: (A (x) B)[i*db + k, j*db + l] = A[i, j] * B[k, l]
    where db is the row count of B. This matches numpy.kron.
    """
    return np.kron(np.asarray(a), np.asarray(b))


def tensor_power(a: np.ndarray, n: int) -> np.ndarray:
    """n-fold Kronecker power of a square matrix."""
    if n < 1:
        raise ValueError(f"tensor power needs n >= 1, got {n}")
    out = np.asarray(a)
    for _ in range(n - 1):
        out = np.kron(out, a)
    return out


def check_hermitian(h: np.ndarray, tol: float = HERMITIAN_TOL,
                    name: str = "matrix") -> np.ndarray:
    """Validate Hermiticity and return the input as a complex array.

    The check is max-abs on H - H^dagger with an absolute tolerance; on
    failure the error names the worst offending entry pair so the caller
    can see whether it is a construction bug or genuine asymmetry.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"{name} must be square, got shape {h.shape}")
    dev = np.abs(h - h.conj().T)
    worst = float(dev.max()) if dev.size else 0.0
    if worst > tol:
        i, j = np.unravel_index(int(dev.argmax()), dev.shape)
        raise ValueError(
            f"{name} is not Hermitian: |H[{i},{j}] - conj(H[{j},{i}])| = "
            f"{worst:.3e} exceeds {tol:.1e}"
        )
    return h


class SpectralDecomposition(NamedTuple):
    """Eigenvalues (descending, real) and matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eigh(h: np.ndarray, tol: float = HERMITIAN_TOL,
         name: str = "matrix") -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    Eigenvalues come back in descending order. Each eigenvector is phase
    fixed: its first component with magnitude above 1e-12 is made real
    and positive, which keeps repeated runs on identical input
    byte-for-byte reproducible.
    """
    h = check_hermitian(h, tol=tol, name=name)
    w, v = scipy.linalg.eigh(h, driver="evr")
    order = np.argsort(w)[::-1]
    w = np.ascontiguousarray(w[order])
    v = np.ascontiguousarray(v[:, order])
    for k in range(v.shape[1]):
        col = v[:, k]
        idx = np.flatnonzero(np.abs(col) > _PHASE_TOL)
        if idx.size:
            pivot = col[idx[0]]
            col *= pivot.conjugate() / abs(pivot)
            # force the pivot exactly real so the convention is crisp
            col[idx[0]] = abs(pivot)
    return SpectralDecomposition(w, v)


def matrix_function(h: np.ndarray, f: Callable[[float], float], *,
                    zero_value: float | None = None,
                    zero_tol: float = 1e-12,
                    name: str = "matrix") -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum.

    Eigenvalues within zero_tol * max|eigenvalue| of zero are replaced by
    zero_value instead of being passed to f, which is how callers encode
    conventions like 0 * log 0 = 0 or pseudo-inverse powers. With
    zero_value=None no substitution happens and f sees every eigenvalue.
    A non-finite f value raises ValueError rather than propagating NaNs
    into later stages.
    """
    dec = eigh(h, name=name)
    lam = dec.eigenvalues
    scale = float(np.max(np.abs(lam))) if lam.size else 0.0
    cut = zero_tol * scale
    vals = np.empty(lam.shape, dtype=float)
    for i, x in enumerate(lam):
        if zero_value is not None and abs(x) <= cut:
            vals[i] = zero_value
            continue
        try:
            y = f(float(x))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(
                f"matrix function undefined at eigenvalue {x!r} of {name}: {exc}"
            ) from exc
        if not math.isfinite(y):
            raise ValueError(
                f"matrix function non-finite at eigenvalue {x!r} of {name}"
            )
        vals[i] = y
    return (dec.eigenvectors * vals) @ dec.eigenvectors.conj().T


def support_projection(h: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Orthogonal projection onto the span of eigenvectors with
    eigenvalue above tol * largest eigenvalue.

    Intended for positive semidefinite input (density operators); the
    threshold is relative so the support of c * rho matches that of rho.
    """
    dec = eigh(h, name="operator")
    lam_max = float(dec.eigenvalues[0]) if dec.eigenvalues.size else 0.0
    keep = dec.eigenvalues > tol * max(lam_max, 0.0)
    v = dec.eigenvectors[:, keep]
    return v @ v.conj().T


def check_density(rho: np.ndarray, name: str = "rho",
                  trace_tol: float = 1e-10,
                  psd_tol: float = 1e-10) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, PSD up to tolerance."""
    rho = check_hermitian(rho, name=name)
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"{name} has trace {tr:.12g}, expected 1")
    lam_min = float(scipy.linalg.eigvalsh(rho)[0])
    if lam_min < -psd_tol:
        raise ValueError(
            f"{name} has eigenvalue {lam_min:.3e} below -{psd_tol:.1e}"
        )
    return rho


def trace_product(a: np.ndarray, b: np.ndarray) -> complex:
    """Tr(A B) without materializing the product."""
    return complex(np.einsum("ij,ji->", a, b))
