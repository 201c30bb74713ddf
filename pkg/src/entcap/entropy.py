"""Entropy and relative entropy functionals, all in nats.

Conventions: eta(t) = -t ln t with eta(0) = 0; relative entropies return
math.inf when the support condition fails, so callers can branch on
math.isinf instead of catching exceptions.
"""

from __future__ import annotations

import math

import numpy as np

from .linalg import SpectralDecomposition, check_hermitian, eigh, matrix_function

SUPPORT_MASS_TOL = 1e-10
_SUPPORT_EIGVAL_TOL = 1e-12


def eta(t: float) -> float:
    """-t ln t for t > 0, extended continuously by eta(0) = 0."""
    if t < 0.0:
        raise ValueError(f"eta is undefined for negative argument {t!r}")
    if t == 0.0:
        return 0.0
    return -t * math.log(t)


def _eta_or_zero(t: float) -> float:
    # tolerant variant for spectra that are PSD only up to rounding
    return eta(t) if t > 0.0 else 0.0


def shannon_entropy(p) -> float:
    """Shannon entropy of a probability vector, in nats.

    Entries may carry tiny negative rounding noise; anything below
    -1e-10 is rejected as an actual sign error.
    """
    p = np.asarray(p, dtype=float)
    if p.size and float(p.min()) < -1e-10:
        raise ValueError(f"probability vector has entry {p.min():.3e}")
    return math.fsum(_eta_or_zero(float(x)) for x in p)


def classical_relative_entropy(p, q) -> float:
    """sum_i p_i ln(p_i / q_i), or math.inf if p charges a zero of q."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError(f"length mismatch: {p.shape} vs {q.shape}")
    terms = []
    for pi, qi in zip(p, q):
        if pi <= 0.0:
            continue
        if qi <= 0.0:
            return math.inf
        terms.append(pi * math.log(pi / qi))
    return math.fsum(terms)


def _validated_spectrum(rho: np.ndarray, name: str) -> SpectralDecomposition:
    """eigh plus the density checks that fall out of the spectrum for free."""
    dec = eigh(rho, name=name)
    lam = dec.eigenvalues
    if lam.size == 0:
        raise ValueError(f"{name} is empty")
    if float(lam[-1]) < -1e-10:
        raise ValueError(f"{name} has eigenvalue {lam[-1]:.3e} below -1e-10")
    tr = math.fsum(float(x) for x in lam)
    if abs(tr - 1.0) > 1e-10:
        raise ValueError(f"{name} has trace {tr:.12g}, expected 1")
    return dec


def von_neumann_entropy(rho: np.ndarray) -> float:
    """von Neumann entropy S(rho) = -Tr rho ln rho in nats."""
    dec = _validated_spectrum(np.asarray(rho, dtype=complex), "rho")
    return math.fsum(_eta_or_zero(float(x)) for x in dec.eigenvalues)


def _support_defect(sigma: np.ndarray, rho_dec: SpectralDecomposition,
                    sigma_on_rho_basis: np.ndarray) -> float:
    """max-abs entry of (I - P) sigma (I - P) for P the support of rho.

    sigma_on_rho_basis is sigma @ eigenvectors, passed in so the caller
    pays for that product only once.
    """
    lam = rho_dec.eigenvalues
    cut = _SUPPORT_EIGVAL_TOL * max(float(lam[0]), 0.0)
    dead = lam <= cut
    if not bool(dead.any()):
        return 0.0
    v0 = rho_dec.eigenvectors[:, dead]
    block = v0.conj().T @ sigma_on_rho_basis[:, dead]
    outside = v0 @ block @ v0.conj().T
    return float(np.abs(outside).max())


def support_within(sigma: np.ndarray, rho: np.ndarray,
                   tol: float = SUPPORT_MASS_TOL) -> bool:
    """True when sigma carries no mass outside the support of rho.

    The test compresses sigma onto the kernel of rho and checks the
    max-abs entry of the compressed block against tol.
    """
    sigma = check_hermitian(np.asarray(sigma, dtype=complex), name="sigma")
    rho_dec = _validated_spectrum(np.asarray(rho, dtype=complex), "rho")
    sv = sigma @ rho_dec.eigenvectors
    return _support_defect(sigma, rho_dec, sv) <= tol


def umegaki_relative_entropy(sigma: np.ndarray, rho: np.ndarray) -> float:
    """Relative entropy S(sigma || rho) = Tr sigma (ln sigma - ln rho).

    Returns math.inf when the support of sigma leaks outside the support
    of rho (compressed mass above 1e-10 in max-abs). Everything runs off
    the two spectral decompositions; ln rho is never materialized.
    """
    sigma = np.asarray(sigma, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    if sigma.shape != rho.shape:
        raise ValueError(f"shape mismatch: {sigma.shape} vs {rho.shape}")
    sig_dec = _validated_spectrum(sigma, "sigma")
    rho_dec = _validated_spectrum(rho, "rho")

    sv = sigma @ rho_dec.eigenvectors
    if _support_defect(sigma, rho_dec, sv) > SUPPORT_MASS_TOL:
        return math.inf

    s_sigma = math.fsum(_eta_or_zero(float(x)) for x in sig_dec.eigenvalues)
    lam = rho_dec.eigenvalues
    # weights <v_k| sigma |v_k> in the eigenbasis of rho
    weights = np.einsum("ik,ik->k", rho_dec.eigenvectors.conj(), sv).real
    # Keep every strictly positive eigenvalue. A relative cut here would
    # silently drop directions like mu_min^n in tensor powers, which still
    # carry sigma-weight; true null directions that round to a positive
    # value only hold weight at the support-defect level, so including
    # them is harmless.
    cross = math.fsum(
        math.log(float(lam[k])) * float(weights[k])
        for k in range(lam.size) if float(lam[k]) > 0.0
    )
    return -s_sigma - cross


def bs_relative_entropy(omega: np.ndarray, rho: np.ndarray) -> float:
    """Belavkin-Staszewski relative entropy of omega with respect to rho.

    Evaluated as -Tr(rho eta(rho^{-1/2} omega rho^{-1/2})) with the
    inverse square root taken on the support of rho; math.inf when omega
    is not supported there. Never below the Umegaki quantity, which is
    what the checks bank exercises.
    """
    omega = np.asarray(omega, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    if omega.shape != rho.shape:
        raise ValueError(f"shape mismatch: {omega.shape} vs {rho.shape}")
    omega = check_hermitian(omega, name="omega")
    rho_dec = _validated_spectrum(rho, "rho")

    ov = omega @ rho_dec.eigenvectors
    if _support_defect(omega, rho_dec, ov) > SUPPORT_MASS_TOL:
        return math.inf

    lam = rho_dec.eigenvalues
    cut = _SUPPORT_EIGVAL_TOL * float(lam[0])
    inv_sqrt_vals = np.where(lam > cut, 1.0 / np.sqrt(np.clip(lam, cut, None)), 0.0)
    v = rho_dec.eigenvectors
    inv_sqrt = (v * inv_sqrt_vals) @ v.conj().T
    x = inv_sqrt @ omega @ inv_sqrt
    x = 0.5 * (x + x.conj().T)
    eta_x = matrix_function(x, _eta_or_zero, zero_value=0.0, name="compressed omega")
    return -float(np.einsum("ij,ji->", rho, eta_x).real)
