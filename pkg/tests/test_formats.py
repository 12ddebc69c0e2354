"""Serialization round trips for multivectors and matrices."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krein_clifford.clifford_core import Multivector, Signature
from krein_clifford.formats import (
    format_complex,
    matrix_from_json,
    matrix_to_json,
    multivector_from_json,
    multivector_from_text,
    multivector_to_json,
    multivector_to_text,
)


def test_format_complex_shapes():
    assert format_complex(1.5) == "1.5"
    assert format_complex(2j) == "2.0i"
    assert format_complex(1 + 2j) == "(1.0+2.0i)"
    assert format_complex(1 - 2j) == "(1.0-2.0i)"


def test_text_examples():
    sig = Signature(1, 3)
    mv = (
        1.5 * Multivector.unit(sig)
        - Multivector.basis_vector(sig, 1)
        + 2j * Multivector.blade(sig, [1, 2])
    )
    text = multivector_to_text(mv)
    assert text == "1.5 + -1.0*e_1 + 2.0i*e_12"
    assert (multivector_from_text(sig, text) - mv).norm_max() == 0.0


def test_text_parses_common_inputs():
    sig = Signature(1, 3)
    assert (multivector_from_text(sig, "c") - Multivector.unit(sig)).norm_max() == 0.0
    assert (multivector_from_text(sig, "e_1") - Multivector.basis_vector(sig, 1)).norm_max() == 0.0
    got = multivector_from_text(sig, "-e_2")
    assert (got + Multivector.basis_vector(sig, 2)).norm_max() == 0.0
    got = multivector_from_text(sig, "1 - 2*e_12")
    want = Multivector.unit(sig) - 2.0 * Multivector.blade(sig, [1, 2])
    assert (got - want).norm_max() == 0.0
    got = multivector_from_text(sig, "(1+2i)*e_23")
    want = Multivector.blade(sig, [2, 3], 1 + 2j)
    assert (got - want).norm_max() == 0.0


def test_text_rejects_bad_input():
    sig = Signature(1, 1)
    with pytest.raises(ValueError):
        multivector_from_text(sig, "e_11")  # repeated index
    with pytest.raises(ValueError):
        multivector_from_text(sig, "e_3")  # out of range
    with pytest.raises(ValueError):
        multivector_from_text(sig, "what")


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=10**6),
    nterms=st.integers(min_value=0, max_value=8),
)
def test_text_round_trip_random(seed, nterms):
    rng = np.random.default_rng(seed)
    sig = Signature(1, 3)
    coeffs = {
        int(rng.integers(0, 16)): complex(rng.normal(), rng.normal()) for _ in range(nterms)
    }
    mv = Multivector(sig, coeffs)
    back = multivector_from_text(sig, multivector_to_text(mv))
    assert (back - mv).norm_max() < 1e-12


def test_json_round_trip(rng):
    sig = Signature(2, 2)
    mv = Multivector.from_dense(sig, rng.normal(size=16) + 1j * rng.normal(size=16))
    doc = multivector_to_json(mv)
    assert doc["sig"] == [2, 2]
    back = multivector_from_json(doc)
    assert (back - mv).norm_max() < 1e-15


def test_matrix_round_trip(rng):
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    back = matrix_from_json(matrix_to_json(m))
    assert np.abs(back - m).max() < 1e-15
