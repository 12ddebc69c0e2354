import numpy as np
import pytest

from krein_clifford.clifford_core import Multivector, Signature


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def rand_mv(sig: Signature, rng, real: bool = False) -> Multivector:
    arr = rng.normal(size=1 << sig.n)
    if not real:
        arr = arr + 1j * rng.normal(size=1 << sig.n)
    return Multivector.from_dense(sig, arr)


def rand_vec(sig: Signature, rng) -> Multivector:
    return Multivector.from_vector(sig, rng.normal(size=sig.n))
