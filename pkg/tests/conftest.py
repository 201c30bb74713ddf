import numpy as np
import pytest

from entcap.rand import generator, random_density, random_probability_vector


@pytest.fixture
def rng():
    return generator(909)


@pytest.fixture
def qubit_pair(rng):
    return random_density(2, rng), random_density(2, rng)


def diagonal_pair_bank(seed, count, min_sep=0.25):
    """Seeded commuting qubit pairs with at least min_sep nats between
    them, so hypothesis-testing trends have room to show."""
    rng = generator(seed)
    out = []
    while len(out) < count:
        p0 = random_probability_vector(2, rng)
        p1 = random_probability_vector(2, rng)
        sep = float(np.sum(p0 * (np.log(p0) - np.log(p1))))
        if sep >= min_sep:
            out.append((p0, p1))
    return out
