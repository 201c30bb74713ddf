"""Block-coding simulator built on per-position repetition tests.

Each letter of a codeword is sent N times and decoded by one shared
binary test; a word is decoded correctly only when every position is.
Because the decoder factorizes over positions, exact block error
probabilities come from products of single-position error rates and the
(d^N)^n joint space never has to exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cqchannel import Codebook, codebook_cost, codebook_holevo, fano_rate_bound, weight_one_codebook
from .entropy import umegaki_relative_entropy
from .linalg import DEFAULT_SIZE_CAP
from .stein import TestProjection, np_test_projection, test_errors


@dataclass(frozen=True)
class RepetitionScheme:
    """A codebook plus the per-position repetition tests.

    The same N-copy projection serves every position, so tests holds one
    object repeated codebook.n times. eta and beta are its two errors:
    eta the chance a costly letter is misread, beta the chance a free
    letter is mistaken for a costly one. max_zeros is the largest number
    of costly letters in any codeword, the ell of the error bound.
    """

    codebook: Codebook
    n_repeats: int
    tests: tuple[TestProjection, ...]
    rate: float
    eta: float
    beta: float
    max_zeros: int


@dataclass(frozen=True)
class ErrorReport:
    """Exact per-word block errors against the closed-form guarantee.

    bound is max_zeros * eta + n * exp(-N * rate); the max over words of
    the exact error never exceeds it.
    """

    per_word_error: dict[str, float]
    max_error: float
    bound: float


def build_repetition_scheme(rho0: np.ndarray, rho1: np.ndarray,
                            codebook: Codebook, n_repeats: int, rate: float,
                            size_cap: int = DEFAULT_SIZE_CAP) -> RepetitionScheme:
    """Attach the N-copy positive-part test to a codebook.

    One test is constructed at threshold e^{N rate} and reused for every
    position; only its two error probabilities feed the error math.
    """
    proj = np_test_projection(rho0, rho1, n_repeats, math.exp(n_repeats * rate),
                              size_cap=size_cap)
    err = test_errors(proj, rho0, rho1, size_cap=size_cap)
    max_zeros = max(w.count("0") for w in codebook.words)
    return RepetitionScheme(codebook=codebook, n_repeats=n_repeats,
                            tests=(proj,) * codebook.n, rate=rate,
                            eta=err.alpha, beta=err.beta,
                            max_zeros=max_zeros)


def exact_block_error_probability(scheme: RepetitionScheme, word: str) -> float:
    """Exact block error of one codeword under the factorized decoder.

    A word with z costly letters succeeds with probability
    (1 - eta)^z (1 - beta)^(n - z); the complement comes back.
    """
    if word not in scheme.codebook.words:
        raise ValueError(f"word {word!r} is not in the codebook")
    z = word.count("0")
    success = (1.0 - scheme.eta) ** z * (1.0 - scheme.beta) ** (scheme.codebook.n - z)
    return 1.0 - success


def error_report(scheme: RepetitionScheme) -> ErrorReport:
    """Exact errors next to the union bound ell*eta + n*exp(-N*rate)."""
    per_word_error = {
        w: exact_block_error_probability(scheme, w)
        for w in scheme.codebook.words
    }
    bound = (scheme.max_zeros * scheme.eta
             + scheme.codebook.n * math.exp(-scheme.n_repeats * scheme.rate))
    return ErrorReport(per_word_error=per_word_error,
                       max_error=max(per_word_error.values()),
                       bound=bound)


def lemma3_repetitions(rate: float, n: int, epsilon: float) -> int:
    """Repetition count (1/rate) ln(2n/epsilon), integer part, at least 1."""
    if not rate > 0.0:
        raise ValueError(f"rate must be positive, got {rate!r}")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon!r}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return max(1, int(math.log(2 * n / epsilon) / rate))


@dataclass(frozen=True)
class CodeRow:
    """One weight-one codebook evaluated end to end.

    cost_bound is cost times S(rho0 || rho1) and gap_target that
    relative entropy itself. The last five fields describe the decoding
    simulation and are None when the series ran without one.
    """

    n: int
    holevo: float
    cost: float
    cost_bound: float
    gap_target: float
    fano_lower: float | None
    max_block_error: float | None
    lemma3_bound: float | None
    n_repeats: int | None
    per_word_error: dict[str, float] | None


def theorem3_series(rho0: np.ndarray, rho1: np.ndarray, n_max: int,
                    rate: float | None = None, epsilon: float | None = None,
                    n_repeats: int | None = None,
                    size_cap: int = DEFAULT_SIZE_CAP) -> list[CodeRow]:
    """Weight-one codebooks at n = 1 .. n_max, with optional decoding.

    Without a rate the rows carry only the entropy side: Holevo
    quantity, cost, cost bound and the gap target. With a rate each
    codebook is also decoded by repetition tests, sized either by a
    fixed count (n_repeats) or per n from the target error epsilon;
    exactly one of the two must accompany the rate.
    """
    if rate is None:
        if epsilon is not None or n_repeats is not None:
            raise ValueError("sizing the repetition tests needs a rate")
    elif (epsilon is None) == (n_repeats is None):
        raise ValueError("give exactly one of epsilon or n_repeats")
    if n_max < 1:
        raise ValueError(f"need n_max >= 1, got {n_max}")
    target = umegaki_relative_entropy(np.asarray(rho0, dtype=complex),
                                      np.asarray(rho1, dtype=complex))
    rows = []
    for n in range(1, n_max + 1):
        book = weight_one_codebook(n)
        cost = codebook_cost(book)
        holevo = codebook_holevo(book, rho0, rho1, size_cap=size_cap)
        if rate is None:
            rows.append(CodeRow(
                n=n, holevo=holevo, cost=cost, cost_bound=cost * target,
                gap_target=target, fano_lower=None, max_block_error=None,
                lemma3_bound=None, n_repeats=None, per_word_error=None,
            ))
            continue
        reps = n_repeats if n_repeats is not None \
            else lemma3_repetitions(rate, n, epsilon)
        scheme = build_repetition_scheme(rho0, rho1, book, reps, rate,
                                         size_cap=size_cap)
        report = error_report(scheme)
        if report.max_error < 1.0:
            fano = fano_rate_bound(report.max_error, book.size)
        else:
            # a dead test decodes nothing; report the vacuous limit
            fano = -math.log(2.0)
        rows.append(CodeRow(
            n=n,
            holevo=holevo,
            cost=cost,
            cost_bound=cost * target,
            gap_target=target,
            fano_lower=fano,
            max_block_error=report.max_error,
            lemma3_bound=report.bound,
            n_repeats=reps,
            per_word_error=report.per_word_error,
        ))
    return rows
