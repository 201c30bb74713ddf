"""Entropy limits of symmetrized mixtures and cost-limited coding numerics."""

from .checks import CheckResult, run_all_checks
from .codesim import (
    CodeRow,
    ErrorReport,
    RepetitionScheme,
    build_repetition_scheme,
    error_report,
    exact_block_error_probability,
    lemma3_repetitions,
    theorem3_series,
)
from .commuting import (
    ClassicalPair,
    EigenvalueGroupSums,
    compute_qn,
    eigenvalues_by_formula,
    gap_exact,
    gap_regular,
    group_sums_singular,
    mixture_entropy,
    singular_lower_bound,
)
from .cqchannel import (
    Codebook,
    CqChannel,
    InputDistribution,
    Povm,
    codebook_cost,
    codebook_holevo,
    fano_rate_bound,
    holevo_identity_residual,
    holevo_quantity,
    induced_mutual_information,
    output_state,
    weight_one_codebook,
    word_product_state,
)
from .entropy import (
    bs_relative_entropy,
    classical_relative_entropy,
    eta,
    shannon_entropy,
    support_within,
    umegaki_relative_entropy,
    von_neumann_entropy,
)
from .linalg import (
    DEFAULT_SIZE_CAP,
    SizeCapError,
    SpectralDecomposition,
    eigh,
    kron,
    matrix_function,
    support_projection,
    tensor_power,
)
from .mixture import (
    GapRecord,
    build_mixture,
    convergence_series,
    entropy_gap,
    identity_residual,
)
from .stein import (
    ExponentRecord,
    TestErrors,
    TestProjection,
    exponent_series,
    np_test_projection,
    test_errors,
)

__version__ = "0.1.0"
