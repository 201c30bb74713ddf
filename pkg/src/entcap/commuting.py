"""Exact spectra for commuting pairs via type-class enumeration.

When sigma and rho are simultaneously diagonal with weights lambda and
mu, every eigenvalue of the symmetrized mixture is indexed by a symbol
tuple (i_1 .. i_n) and equals (1/n) sum_k lambda_{i_k} prod_{j != k}
mu_{i_j}. Tuples then collapse into three groups: all symbols on the
support of mu (group A), exactly one symbol off support (group B), two
or more off support (group C, eigenvalue exactly zero). Grouping by
type class turns the d^n sum into a polynomial-size one, which is what
makes n in the hundreds reachable for the moment quantity Q_n and n in
the dozens for the exact mixture entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .entropy import classical_relative_entropy, eta, shannon_entropy
from .linalg import SizeCapError

MAX_FORMULA_TUPLES = 10 ** 7
MAX_TYPES = 2_000_000
QN_MAX_SUPPORT = 4
QN_MAX_N = 200

_WEIGHT_TOL = 1e-10


@dataclass(frozen=True)
class ClassicalPair:
    """Eigenvalue data of a commuting (sigma, rho) pair.

    mu are the weights of rho, lam those of sigma, in a common order
    with the support of mu occupying the first ell indices. Build
    instances through from_weights, which performs the reordering.
    """

    mu: tuple[float, ...]
    lam: tuple[float, ...]
    ell: int

    def __post_init__(self) -> None:
        d = len(self.mu)
        if d == 0 or len(self.lam) != d:
            raise ValueError(
                f"mu and lam must be equal nonzero length, got {d} and {len(self.lam)}"
            )
        if not 1 <= self.ell <= d:
            raise ValueError(f"ell must be in [1, {d}], got {self.ell}")
        for i, value in enumerate(self.mu):
            if i < self.ell and not value > 0.0:
                raise ValueError(f"mu[{i}] = {value!r} inside the declared support")
            if i >= self.ell and value != 0.0:
                raise ValueError(f"mu[{i}] = {value!r} outside the declared support")
        if any(x < 0.0 for x in self.lam):
            raise ValueError("lam has a negative entry")
        for name, vec in (("mu", self.mu), ("lam", self.lam)):
            total = math.fsum(vec)
            if abs(total - 1.0) > _WEIGHT_TOL:
                raise ValueError(f"{name} sums to {total!r}, expected 1")

    @classmethod
    def from_weights(cls, mu, lam) -> "ClassicalPair":
        """Validate two weight vectors and reorder them into canonical form.

        Support indices of mu come first (original order kept); the dead
        indices follow, sorted by increasing sigma weight, so the last
        index carries the largest off-support mass. That ordering gives
        the strongest group-B bound for singular pairs.
        """
        mu = np.asarray(mu, dtype=float)
        lam = np.asarray(lam, dtype=float)
        if mu.shape != lam.shape or mu.ndim != 1:
            raise ValueError(
                f"weight vectors must share one shape, got {mu.shape} and {lam.shape}"
            )
        for name, vec in (("mu", mu), ("lam", lam)):
            if vec.size and float(vec.min()) < -1e-12:
                raise ValueError(f"{name} has entry {vec.min():.3e}")
        mu = np.clip(mu, 0.0, None)
        lam = np.clip(lam, 0.0, None)
        alive = [i for i in range(mu.size) if mu[i] > 0.0]
        dead = sorted((i for i in range(mu.size) if mu[i] == 0.0),
                      key=lambda i: lam[i])
        order = alive + dead
        return cls(mu=tuple(float(mu[i]) for i in order),
                   lam=tuple(float(lam[i]) for i in order),
                   ell=len(alive))

    @property
    def dimension(self) -> int:
        return len(self.mu)

    @property
    def is_singular(self) -> bool:
        """True when sigma puts mass outside the support of rho."""
        return any(x > 0.0 for x in self.lam[self.ell:])

    def support_mass(self) -> float:
        """Mass of sigma on the support of rho."""
        return math.fsum(self.lam[:self.ell])

    def rho_entropy(self) -> float:
        return shannon_entropy(self.mu)

    def sigma_entropy(self) -> float:
        return shannon_entropy(self.lam)

    def target(self) -> float:
        """Classical relative entropy of lam from mu; inf when singular."""
        return classical_relative_entropy(self.lam, self.mu)

    def diagonal_states(self) -> tuple[np.ndarray, np.ndarray]:
        """(sigma, rho) as diagonal density matrices, for dense cross-checks."""
        return np.diag(np.asarray(self.lam, dtype=complex)), \
            np.diag(np.asarray(self.mu, dtype=complex))


@dataclass(frozen=True)
class EigenvalueGroupSums:
    """Closed-form entropy contributions of eigenvalue groups A and B."""

    sum_a: float
    sum_b: float
    qn: float
    n: int


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _type_count(total: int, parts: int) -> int:
    return math.comb(total + parts - 1, parts - 1)


def eigenvalues_by_formula(pair: ClassicalPair, n: int,
                           max_tuples: int = MAX_FORMULA_TUPLES) -> np.ndarray:
    """All d^n mixture eigenvalues from the per-tuple formula.

    Returned in lexicographic tuple order (first symbol most
    significant). Scales exponentially, so it is capped; the type-class
    paths below are the ones meant for large n.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    d = pair.dimension
    total = d ** n
    if total > max_tuples:
        raise SizeCapError(
            f"formula enumeration needs {total} tuples, above the cap {max_tuples}"
        )
    mu = np.asarray(pair.mu)
    lam = np.asarray(pair.lam)
    out = np.empty(total, dtype=float)
    chunk = 1 << 18
    for lo in range(0, total, chunk):
        hi = min(lo + chunk, total)
        codes = np.arange(lo, hi, dtype=np.int64)
        idx = np.empty((hi - lo, n), dtype=np.int64)
        for pos in range(n - 1, -1, -1):
            idx[:, pos] = codes % d
            codes //= d
        mu_t = mu[idx]
        lam_t = lam[idx]
        prefix = np.ones_like(mu_t)
        prefix[:, 1:] = np.cumprod(mu_t[:, :-1], axis=1)
        suffix = np.ones_like(mu_t)
        suffix[:, :-1] = np.cumprod(mu_t[:, ::-1], axis=1)[:, ::-1][:, 1:]
        out[lo:hi] = (lam_t * prefix * suffix).sum(axis=1) / n
    return out


def compute_qn(pair: ClassicalPair, n: int,
               max_types: int = MAX_TYPES) -> float:
    """Moment quantity Q_n = E[eta((X_1 + .. + X_n) / n)].

    The X_j are iid with value lam_i / mu_i taken with probability mu_i
    over the support indices. Exact evaluation by multinomial type
    classes; the composition count is polynomial in n but explodes with
    the support size, hence the ell <= 4, n <= 200 limits.
    """
    if not 1 <= n <= QN_MAX_N:
        raise ValueError(f"need 1 <= n <= {QN_MAX_N}, got {n}")
    ell = pair.ell
    if ell > QN_MAX_SUPPORT:
        raise ValueError(
            f"type enumeration handles support size <= {QN_MAX_SUPPORT}, got {ell}"
        )
    if _type_count(n, ell) > max_types:
        raise SizeCapError(
            f"Q_n needs {_type_count(n, ell)} type classes, above {max_types}"
        )
    mu = pair.mu[:ell]
    ratios = [pair.lam[i] / pair.mu[i] for i in range(ell)]
    log_mu = [math.log(m) for m in mu]
    terms = []
    for k in _compositions(n, ell):
        log_w = math.lgamma(n + 1)
        log_w -= math.fsum(math.lgamma(c + 1) for c in k)
        log_w += math.fsum(c * lm for c, lm in zip(k, log_mu))
        mean = math.fsum(c * x for c, x in zip(k, ratios)) / n
        terms.append(math.exp(log_w) * eta(mean))
    return math.fsum(terms)


def mixture_entropy(pair: ClassicalPair, n: int,
                    max_types: int = MAX_TYPES) -> float:
    """Exact S(R_n) for a commuting pair, by type class.

    Group A runs over compositions of n on the support alphabet; each
    off-support symbol with positive sigma weight contributes a group-B
    family over compositions of n - 1; group C eigenvalues vanish and
    drop out of the entropy sum.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    ell, d = pair.ell, pair.dimension
    off_positive = [i for i in range(ell, d) if pair.lam[i] > 0.0]
    needed = _type_count(n, ell) + len(off_positive) * _type_count(n - 1, ell)
    if needed > max_types:
        raise SizeCapError(
            f"mixture entropy needs {needed} type classes, above {max_types}"
        )
    log_mu = [math.log(m) for m in pair.mu[:ell]]
    ratios = [pair.lam[i] / pair.mu[i] for i in range(ell)]
    terms = []
    for k in _compositions(n, ell):
        log_count = math.lgamma(n + 1) - math.fsum(math.lgamma(c + 1) for c in k)
        log_m = math.fsum(c * lm for c, lm in zip(k, log_mu))
        coeff = math.fsum(c * x for c, x in zip(k, ratios)) / n
        if coeff <= 0.0:
            continue
        log_kappa = math.log(coeff) + log_m
        terms.append(-math.exp(log_count + log_kappa) * log_kappa)
    for i in off_positive:
        base = math.log(pair.lam[i] / n)
        for k in _compositions(n - 1, ell):
            log_count = (math.log(n) + math.lgamma(n)
                         - math.fsum(math.lgamma(c + 1) for c in k))
            log_kappa = base + math.fsum(c * lm for c, lm in zip(k, log_mu))
            terms.append(-math.exp(log_count + log_kappa) * log_kappa)
    return math.fsum(terms)


def gap_exact(pair: ClassicalPair, n: int,
              max_types: int = MAX_TYPES) -> float:
    """S(R_n) - (n-1) S(rho) - S(sigma) through the type-class entropy."""
    return (mixture_entropy(pair, n, max_types=max_types)
            - (n - 1) * pair.rho_entropy()
            - pair.sigma_entropy())


def gap_regular(pair: ClassicalPair, n: int,
                max_types: int = MAX_TYPES) -> float:
    """Entropy gap of a regular pair in closed form: target + Q_n.

    Q_n is nonpositive and vanishes as n grows, which exhibits the
    convergence of the gap to the relative entropy from below.
    """
    if pair.is_singular:
        raise ValueError("gap_regular needs a regular pair; this one is singular")
    return pair.target() + compute_qn(pair, n, max_types=max_types)


def group_sums_singular(pair: ClassicalPair, n: int,
                        max_types: int = MAX_TYPES) -> EigenvalueGroupSums:
    """Entropy contributions of groups A and B for a singular pair.

    With s = sigma mass on the support of rho and t = sum of
    lam_i ln mu_i over support indices,

        sum_a = s (n-1) S(rho) - t + Q_n
        sum_b = lam_d (n-1) S(rho) - lam_d ln(lam_d / n)

    where lam_d is the sigma weight at the last index. Group C is
    dropped (its eigenvalues are zero but plentiful; only A and B are
    needed for the logarithmic lower bound on the gap).
    """
    if not pair.is_singular:
        raise ValueError("group sums are for singular pairs; this one is regular")
    lam_d = pair.lam[-1]
    if not lam_d > 0.0:
        raise ValueError(
            "last index carries no sigma mass; build the pair with "
            "from_weights so the heaviest off-support weight sits last"
        )
    qn = compute_qn(pair, n, max_types=max_types)
    s_rho = pair.rho_entropy()
    s_support = pair.support_mass()
    t = math.fsum(pair.lam[i] * math.log(pair.mu[i]) for i in range(pair.ell))
    sum_a = s_support * (n - 1) * s_rho - t + qn
    sum_b = lam_d * (n - 1) * s_rho - lam_d * math.log(lam_d / n)
    return EigenvalueGroupSums(sum_a=sum_a, sum_b=sum_b, qn=qn, n=n)


def singular_lower_bound(pair: ClassicalPair, n: int,
                         max_types: int = MAX_TYPES) -> float:
    """Closed-form lower bound on the gap of a singular pair.

    Keeps only groups A and B of the mixture entropy, then subtracts
    (n-1) S(rho) + S(sigma) like the gap does. Grows like
    lam_d ln n, which certifies the divergence of the true gap.
    """
    sums = group_sums_singular(pair, n, max_types=max_types)
    return (sums.sum_a + sums.sum_b
            - (n - 1) * pair.rho_entropy()
            - pair.sigma_entropy())
