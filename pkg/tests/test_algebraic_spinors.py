"""Minimal left ideals, the self-adjoint idempotent construction, and the
C*-norm, with singular-value oracles."""

import numpy as np
import pytest
import scipy.linalg as sla

from krein_clifford.algebraic_spinors import (
    DegenerateIdealError,
    build_primitive_idempotent,
    canonical_rotor,
    canonical_selfadjoint_idempotent,
    cstar_identity_check,
    cstar_norm,
    euclidean_isomorphism,
    ideal_from_idempotent,
    is_isotropic_ideal,
    restricted_sigma_product,
    rho_operator_norm,
    span_equal,
)
from krein_clifford.clifford_core import (
    AdmissibleRealStructure,
    Multivector,
    Signature,
    euclidean_structure,
    make_real_structure,
    sigma_product,
    sigma_product_gram,
)
from krein_clifford.spinor_rep import build_gammas, represent

from conftest import rand_mv

SIGS = [Signature(2, 0), Signature(1, 1), Signature(1, 3), Signature(3, 1), Signature(2, 2)]


def _boosted_structure(sig, t=0.3):
    """A second Euclidean structure: boost of e_1 in the (e_1, e_2) plane."""
    b = np.cosh(t) * Multivector.basis_vector(sig, 1) + np.sinh(t) * Multivector.basis_vector(
        sig, 2
    )
    return make_real_structure(b)


# -- ideals -------------------------------------------------------------


@pytest.mark.parametrize("sig", SIGS, ids=lambda s: f"{s.p}{s.q}")
def test_primitive_idempotent_construction(sig):
    ideal = build_primitive_idempotent(sig)
    e = ideal.e
    assert (e * e - e).norm_max() < 1e-12
    assert ideal.dim == 1 << (sig.n // 2)
    # rank oracle: rho(e) is a rank-one projector
    g = build_gammas(sig)
    svals = np.linalg.svd(represent(g, e), compute_uv=False)
    assert int((svals > 1e-9).sum()) == 1
    # trace of a rank-one projector in a 2^{n/2}-dim representation
    assert e.normalized_trace() == pytest.approx(2.0 ** (-sig.n / 2), abs=1e-12)
    # basis elements do lie in the left ideal: x*e = x for x in the basis
    for x in ideal.ideal_basis:
        assert (x * e - x).norm_max() < 1e-12


def test_ideal_rejects_non_idempotent_and_non_primitive():
    sig = Signature(1, 3)
    with pytest.raises(ValueError):
        ideal_from_idempotent(Multivector.basis_vector(sig, 1))
    with pytest.raises(ValueError):
        ideal_from_idempotent(Multivector.unit(sig))  # rank 4, not primitive


def test_degenerate_witness_zero_gram():
    sig = Signature(1, 1)
    e = 0.5 * (Multivector.unit(sig) + Multivector.blade(sig, [1, 2]))
    ideal = ideal_from_idempotent(e)
    sigma = AdmissibleRealStructure.canonical(sig)
    assert is_isotropic_ideal(ideal, sigma)
    G, rep = restricted_sigma_product(ideal, sigma)
    assert np.abs(G).max() <= 1e-12
    assert rep.classification == "degenerate"
    with pytest.raises(DegenerateIdealError):
        canonical_selfadjoint_idempotent(ideal, sigma)


@pytest.mark.parametrize("sig", SIGS, ids=lambda s: f"{s.p}{s.q}")
def test_idempotent_dichotomy(sig):
    # either the Gram vanishes identically or it is non-degenerate
    ideal = build_primitive_idempotent(sig)
    for sigma in (AdmissibleRealStructure.canonical(sig), euclidean_structure(sig)):
        G, rep = restricted_sigma_product(ideal, sigma)
        if is_isotropic_ideal(ideal, sigma):
            assert np.abs(G).max() <= 1e-12
        else:
            assert rep.n_zero == 0


@pytest.mark.parametrize("sig", SIGS, ids=lambda s: f"{s.p}{s.q}")
def test_canonical_selfadjoint_idempotent(sig):
    sigma = euclidean_structure(sig)
    ideal = build_primitive_idempotent(sig)
    f = canonical_selfadjoint_idempotent(ideal, sigma)
    assert (sigma.sigma_cross(f) - f).norm_max() < 1e-10
    assert (f * f - f).norm_max() < 1e-10
    assert abs(f.normalized_trace() - 2.0 ** (-sig.n / 2)) < 1e-10
    assert span_equal(ideal, ideal_from_idempotent(f))


def test_canonical_idempotent_fixed_point():
    # applying the construction to an already self-adjoint e returns e
    sig = Signature(1, 3)
    sigma = euclidean_structure(sig)
    ideal = build_primitive_idempotent(sig)
    f = canonical_selfadjoint_idempotent(ideal, sigma)
    f2 = canonical_selfadjoint_idempotent(ideal_from_idempotent(f), sigma)
    assert (f2 - f).norm_max() < 1e-9


def test_span_equal_detects_different_ideals():
    sig = Signature(1, 3)
    a = build_primitive_idempotent(sig)
    one = Multivector.unit(sig)
    other = (
        0.5 * (one - Multivector.basis_vector(sig, 1))
        * (0.5 * (one + 1j * Multivector.blade(sig, [2, 3])))
    )
    b = ideal_from_idempotent(other)
    assert not span_equal(a, b)
    assert span_equal(a, a)


# -- C*-norm ------------------------------------------------------------


def test_cstar_norm_scalar_and_unitary():
    sig = Signature(2, 0)
    sigma = AdmissibleRealStructure.canonical(sig)
    assert cstar_norm(sigma, Multivector.unit(sig)) == pytest.approx(1.0, abs=1e-12)
    assert cstar_norm(sigma, 3j * Multivector.unit(sig)) == pytest.approx(3.0, abs=1e-12)
    # generators are sigma-unitary: norm 1
    assert cstar_norm(sigma, Multivector.basis_vector(sig, 1)) == pytest.approx(1.0, abs=1e-10)


def test_cstar_norm_singular_value_oracle():
    # a = e_1 + 2 e_2 in (2,0), sigma = c: rho(a) is hermitian for the
    # standard product; its norm is the largest |eigenvalue| = sqrt(5)
    sig = Signature(2, 0)
    sigma = AdmissibleRealStructure.canonical(sig)
    a = Multivector.basis_vector(sig, 1) + 2.0 * Multivector.basis_vector(sig, 2)
    assert cstar_norm(sigma, a) == pytest.approx(np.sqrt(5.0), abs=1e-10)
    assert cstar_identity_check(sigma, a) <= 1e-10


def test_cstar_norm_requires_euclidean():
    sig = Signature(1, 1)
    with pytest.raises(ValueError):
        cstar_norm(AdmissibleRealStructure.canonical(sig), Multivector.unit(sig))
    with pytest.raises(ValueError):
        rho_operator_norm(AdmissibleRealStructure.canonical(sig), Multivector.unit(sig))


@pytest.mark.parametrize(
    "sig,make_sigma",
    [
        (Signature(2, 0), lambda s: AdmissibleRealStructure.canonical(s)),
        (Signature(1, 1), lambda s: make_real_structure(Multivector.basis_vector(s, 1))),
        (Signature(1, 3), lambda s: make_real_structure(Multivector.basis_vector(s, 1))),
    ],
    ids=["20", "11", "13"],
)
def test_cstar_identity_and_norm_equality(sig, make_sigma, rng):
    sigma = make_sigma(sig)
    for _ in range(20):
        a = rand_mv(sig, rng)
        na = cstar_norm(sigma, a)
        assert cstar_identity_check(sigma, a) <= 1e-9 * max(na * na, 1.0)
        assert abs(na - rho_operator_norm(sigma, a)) <= 1e-9 * max(na, 1.0)
        # C*-norm dominates the normalized-trace "Frobenius" scale
        assert na >= abs(a.normalized_trace()) - 1e-12


def test_whitened_gram_oracle(rng):
    # direct oracle for the norm: largest generalized singular value of
    # left multiplication for the Gram metric, computed with eigh
    sig = Signature(1, 1)
    sigma = make_real_structure(Multivector.basis_vector(sig, 1))
    G = sigma_product_gram(sigma)
    G = 0.5 * (G + G.conj().T)
    a = rand_mv(sig, rng)
    L = np.column_stack(
        [(a * Multivector(sig, {m: 1.0})).dense() for m in range(4)]
    )
    w = sla.eigh(L.conj().T @ G @ L, G, eigvals_only=True)
    assert cstar_norm(sigma, a) == pytest.approx(np.sqrt(max(w)), abs=1e-9)


# -- canonical isometry --------------------------------------------------


def test_canonical_rotor_transports_b():
    sig = Signature(1, 3)
    sigma = make_real_structure(Multivector.basis_vector(sig, 1))
    sigma2 = _boosted_structure(sig)
    u, u_inv = canonical_rotor(sigma, sigma2)
    assert (u * u_inv - Multivector.unit(sig)).norm_max() < 1e-12
    assert (u * sigma.b * u.cross() - sigma2.b).norm_max() < 1e-10


def test_euclidean_isomorphism_intertwines_involutions(rng):
    sig = Signature(1, 3)
    sigma = make_real_structure(Multivector.basis_vector(sig, 1))
    sigma2 = _boosted_structure(sig)
    for _ in range(10):
        a = rand_mv(sig, rng)
        lhs = euclidean_isomorphism(sigma, sigma2, sigma.sigma_cross(a))
        rhs = sigma2.sigma_cross(euclidean_isomorphism(sigma, sigma2, a))
        assert (lhs - rhs).norm_max() < 1e-9


def test_euclidean_isomorphism_is_isometry(rng):
    for sig, mk in [
        (Signature(1, 1), lambda s: make_real_structure(Multivector.basis_vector(s, 1))),
        (Signature(1, 3), lambda s: make_real_structure(Multivector.basis_vector(s, 1))),
    ]:
        sigma = mk(sig)
        sigma2 = _boosted_structure(sig)
        for _ in range(10):
            a = rand_mv(sig, rng)
            na = cstar_norm(sigma, a)
            nb = cstar_norm(sigma2, euclidean_isomorphism(sigma, sigma2, a))
            assert abs(na - nb) <= 1e-9 * max(na, 1.0)


def test_euclidean_isomorphism_identity_pair(rng):
    sig = Signature(2, 0)
    sigma = AdmissibleRealStructure.canonical(sig)
    a = rand_mv(sig, rng)
    assert (euclidean_isomorphism(sigma, sigma, a) - a).norm_max() < 1e-12
