"""Classical-quantum channels, Holevo quantities, codebooks and cost.

A channel maps each letter of a finite alphabet to a density matrix on
one common space. Codebooks live over the binary alphabet where letter
'0' is the costly signal letter (state rho0) and letter '1' is free
(state rho1); the cost of a word is its number of zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .entropy import eta, umegaki_relative_entropy, von_neumann_entropy
from .linalg import (
    DEFAULT_SIZE_CAP,
    check_density,
    check_hermitian,
    check_size_cap,
    trace_product,
)

_DIST_TOL = 1e-10
_POVM_TOL = 1e-10


class CqChannel:
    """Finite-alphabet channel: letter x goes to the density matrix outputs[x]."""

    def __init__(self, outputs) -> None:
        validated = tuple(
            check_density(np.asarray(s, dtype=complex), f"outputs[{i}]")
            for i, s in enumerate(outputs)
        )
        if not validated:
            raise ValueError("channel needs at least one output state")
        dim = validated[0].shape[0]
        for i, s in enumerate(validated):
            if s.shape[0] != dim:
                raise ValueError(
                    f"outputs[{i}] has dimension {s.shape[0]}, expected {dim}"
                )
        self.outputs = validated

    @property
    def alphabet(self) -> tuple[int, ...]:
        return tuple(range(len(self.outputs)))

    @property
    def alphabet_size(self) -> int:
        return len(self.outputs)

    @property
    def dim(self) -> int:
        return self.outputs[0].shape[0]


@dataclass(frozen=True)
class InputDistribution:
    """Probability weights over the channel alphabet."""

    probabilities: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "probabilities",
                           tuple(float(x) for x in self.probabilities))
        if not self.probabilities:
            raise ValueError("empty distribution")
        if min(self.probabilities) < -1e-12:
            raise ValueError(f"negative probability {min(self.probabilities)!r}")
        total = math.fsum(self.probabilities)
        if abs(total - 1.0) > _DIST_TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")

    @classmethod
    def uniform(cls, k: int) -> "InputDistribution":
        return cls(tuple([1.0 / k] * k))


def _dist_array(p, size: int) -> np.ndarray:
    if isinstance(p, InputDistribution):
        arr = np.asarray(p.probabilities, dtype=float)
    else:
        arr = np.asarray(
            InputDistribution(tuple(float(x) for x in p)).probabilities)
    if arr.size != size:
        raise ValueError(f"distribution has {arr.size} entries, alphabet has {size}")
    return np.clip(arr, 0.0, None)


class Povm:
    """Measurement given by positive elements that sum to the identity."""

    def __init__(self, elements) -> None:
        ops = tuple(
            check_hermitian(np.asarray(e, dtype=complex), name=f"elements[{i}]")
            for i, e in enumerate(elements)
        )
        if not ops:
            raise ValueError("POVM needs at least one element")
        dim = ops[0].shape[0]
        total = np.zeros((dim, dim), dtype=complex)
        for i, e in enumerate(ops):
            if e.shape[0] != dim:
                raise ValueError(f"elements[{i}] has dimension {e.shape[0]}, expected {dim}")
            low = float(scipy.linalg.eigvalsh(e)[0])
            if low < -_POVM_TOL:
                raise ValueError(f"elements[{i}] has eigenvalue {low:.3e}")
            total += e
        defect = float(np.abs(total - np.eye(dim)).max())
        if defect > _POVM_TOL:
            raise ValueError(f"elements sum misses identity by {defect:.3e}")
        self.elements = ops

    @property
    def outcomes(self) -> int:
        return len(self.elements)


def output_state(channel: CqChannel, p) -> np.ndarray:
    """Average output sum_x p(x) rho_x."""
    probs = _dist_array(p, channel.alphabet_size)
    out = np.zeros((channel.dim, channel.dim), dtype=complex)
    for weight, state in zip(probs, channel.outputs):
        if weight > 0.0:
            out += weight * state
    return out


def holevo_quantity(channel: CqChannel, p) -> float:
    """Holevo quantity S(rho_bar) - sum_x p(x) S(rho_x), in nats."""
    probs = _dist_array(p, channel.alphabet_size)
    avg = output_state(channel, p)
    inner = math.fsum(
        float(w) * von_neumann_entropy(s)
        for w, s in zip(probs, channel.outputs) if w > 0.0
    )
    return von_neumann_entropy(avg) - inner


def holevo_identity_residual(channel: CqChannel, p, reference) -> float:
    """Deviation in the decomposition of average relative entropy.

    For any reference state with all channel outputs inside its support,
    sum_x p(x) S(rho_x || ref) equals the Holevo quantity plus
    S(rho_bar || ref). Returns the absolute difference of the two sides,
    each computed on its own.
    """
    reference = check_density(np.asarray(reference, dtype=complex), "reference")
    probs = _dist_array(p, channel.alphabet_size)
    lhs_terms = []
    for weight, state in zip(probs, channel.outputs):
        if weight <= 0.0:
            continue
        value = umegaki_relative_entropy(state, reference)
        if not math.isfinite(value):
            raise ValueError(
                "a channel output leaks outside the reference support; "
                "the identity compares infinities there"
            )
        lhs_terms.append(float(weight) * value)
    lhs = math.fsum(lhs_terms)
    rhs = (holevo_quantity(channel, p)
           + umegaki_relative_entropy(output_state(channel, p), reference))
    return abs(lhs - rhs)


def induced_mutual_information(channel: CqChannel, p, povm: Povm) -> float:
    """Mutual information of the letter and the measured outcome, in nats.

    Joint distribution p(x) Tr(rho_x F_y); returned as H(Y) - H(Y|X).
    Never exceeds the Holevo quantity, which is what the checks bank
    verifies across random measurements.
    """
    probs = _dist_array(p, channel.alphabet_size)
    if povm.elements[0].shape[0] != channel.dim:
        raise ValueError(
            f"POVM dimension {povm.elements[0].shape[0]} does not match "
            f"channel dimension {channel.dim}"
        )
    cond = np.empty((channel.alphabet_size, povm.outcomes), dtype=float)
    for x, state in enumerate(channel.outputs):
        for y, effect in enumerate(povm.elements):
            cond[x, y] = max(trace_product(state, effect).real, 0.0)
    marginal = probs @ cond
    h_out = math.fsum(eta(float(q)) for q in marginal)
    h_cond = math.fsum(
        float(px) * math.fsum(eta(float(t)) for t in row)
        for px, row in zip(probs, cond) if px > 0.0
    )
    return h_out - h_cond


@dataclass(frozen=True)
class Codebook:
    """A set of distinct binary words of one common length."""

    n: int
    words: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"word length must be >= 1, got {self.n}")
        if not self.words:
            raise ValueError("codebook needs at least one word")
        if len(set(self.words)) != len(self.words):
            raise ValueError("codebook words must be distinct")
        for w in self.words:
            if len(w) != self.n or set(w) - {"0", "1"}:
                raise ValueError(f"bad word {w!r}: length {self.n} over 0/1 required")

    @classmethod
    def from_words(cls, words) -> "Codebook":
        words = tuple(words)
        if not words:
            raise ValueError("codebook needs at least one word")
        return cls(n=len(words[0]), words=words)

    @property
    def size(self) -> int:
        return len(self.words)


def weight_one_codebook(n: int) -> Codebook:
    """The n words of length n with exactly one costly letter each."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    words = tuple("1" * i + "0" + "1" * (n - 1 - i) for i in range(n))
    return Codebook(n=n, words=words)


def codebook_cost(book: Codebook) -> float:
    """Average number of costly ('0') letters per codeword."""
    return math.fsum(w.count("0") for w in book.words) / book.size


def word_product_state(rho0: np.ndarray, rho1: np.ndarray, word: str,
                       size_cap: int = DEFAULT_SIZE_CAP) -> np.ndarray:
    """Product state of one word: position i contributes rho0 on '0', rho1 on '1'."""
    rho0 = check_density(np.asarray(rho0, dtype=complex), "rho0")
    rho1 = check_density(np.asarray(rho1, dtype=complex), "rho1")
    if rho0.shape != rho1.shape:
        raise ValueError(f"shape mismatch: {rho0.shape} vs {rho1.shape}")
    if not word or set(word) - {"0", "1"}:
        raise ValueError(f"bad word {word!r}")
    d = rho0.shape[0]
    check_size_cap(d ** len(word), size_cap, f"the product state of {word!r}")
    out = rho0 if word[0] == "0" else rho1
    for ch in word[1:]:
        out = np.kron(out, rho0 if ch == "0" else rho1)
    return out


def codebook_holevo(book: Codebook, rho0: np.ndarray, rho1: np.ndarray,
                    size_cap: int = DEFAULT_SIZE_CAP) -> float:
    """Holevo quantity of the codebook under uniform word choice.

    The average state is materialized on the n-fold space; per-word
    entropies use additivity of entropy across tensor factors, so only
    the single-letter entropies are ever diagonalized besides the
    average.
    """
    rho0 = check_density(np.asarray(rho0, dtype=complex), "rho0")
    rho1 = check_density(np.asarray(rho1, dtype=complex), "rho1")
    d = rho0.shape[0]
    dim = d ** book.n
    check_size_cap(dim, size_cap, f"the codebook average state (n={book.n})")
    avg = np.zeros((dim, dim), dtype=complex)
    for w in book.words:
        avg += word_product_state(rho0, rho1, w, size_cap=size_cap)
    avg /= book.size
    s0 = von_neumann_entropy(rho0)
    s1 = von_neumann_entropy(rho1)
    mean_inner = math.fsum(
        w.count("0") * s0 + w.count("1") * s1 for w in book.words
    ) / book.size
    return von_neumann_entropy(avg) - mean_inner


def fano_rate_bound(epsilon: float, size: int) -> float:
    """Lower bound (1 - epsilon) ln(size) - ln 2 on extractable nats.

    epsilon is the largest admissible decoding error probability and
    size the codebook cardinality.
    """
    if not 0.0 <= epsilon < 1.0:
        raise ValueError(f"error probability must be in [0, 1), got {epsilon!r}")
    if size < 1:
        raise ValueError(f"codebook size must be >= 1, got {size}")
    return (1.0 - epsilon) * math.log(size) - math.log(2.0)
