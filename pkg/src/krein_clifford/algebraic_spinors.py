"""Algebraic spinors and the C*-structure of Euclidean real structures.

Minimal left ideals S_e = Cl(V)e of primitive idempotents carry the
restriction of the sigma-product, which is either identically zero
(when e*e^{x_sigma} = 0) or a sigma-compatible Krein product, in which
case the ideal is generated by a unique sigma-self-adjoint primitive
idempotent f.  For Euclidean sigma the norm

    ||a||_{inf,sigma} = sup { ||ab||_sigma : ||b||_sigma = 1 }

turns (Cl(V), x_sigma) into a C*-algebra without reference to any
spinor representation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .clifford_core import (
    AdmissibleRealStructure,
    Multivector,
    Signature,
    hermitian_inertia,
    FormSignatureReport,
    is_euclidean,
    sigma_product,
    sigma_product_gram,
)
from .spinor_rep import build_gammas, build_krein_form, represent, sigma_compatible_product

SPAN_TOL = 1e-10


class DegenerateIdealError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class IdempotentIdeal:
    e: Multivector
    ideal_basis: tuple[Multivector, ...]

    @property
    def sig(self) -> Signature:
        return self.e.sig

    @property
    def dim(self) -> int:
        return len(self.ideal_basis)

    def coordinate_matrix(self) -> np.ndarray:
        """Columns are the dense blade coordinates of the basis elements."""
        return np.column_stack([b.dense() for b in self.ideal_basis])


def ideal_from_idempotent(e: Multivector) -> IdempotentIdeal:
    """Left ideal Cl(V)e of a primitive idempotent, with a deterministic basis."""
    sig = e.sig
    if not (e * e).approx_eq(e, tol=1e-10):
        raise ValueError("e is not idempotent")
    g = build_gammas(sig)
    svals = np.linalg.svd(represent(g, e), compute_uv=False)
    rank = int(np.sum(svals > 1e-9 * max(svals[0], 1.0)))
    if rank != 1:
        raise ValueError(f"e is not primitive (rank {rank} != 1)")
    target = 1 << (sig.n // 2)
    basis: list[Multivector] = []
    ortho: list[np.ndarray] = []
    for mask in range(1 << sig.n):
        cand = Multivector(sig, {mask: 1.0}) * e
        vec = cand.dense()
        for u in ortho:
            vec = vec - (u.conj() @ vec) * u
        norm = np.linalg.norm(vec)
        if norm > 1e-9:
            basis.append(cand)
            ortho.append(vec / norm)
            if len(basis) == target:
                break
    if len(basis) != target:
        raise ValueError("ideal has unexpected dimension")
    return IdempotentIdeal(e, tuple(basis))


def build_primitive_idempotent(sig: Signature) -> IdempotentIdeal:
    """e = prod_j (1 + w_j)/2 from commuting square-one blades.

    w_1 comes from e_1 and the following factors from the pairs
    (e_2,e_3), (e_4,e_5), ..., with a factor i inserted whenever the
    blade squares to -1.
    """
    half = 0.5 * Multivector.unit(sig)
    w1 = Multivector.basis_vector(sig, 1)
    if sig.eta(1) < 0:
        w1 = 1j * w1
    e = half * (Multivector.unit(sig) + w1)
    for j in range(2, sig.n // 2 + 1):
        a, b = 2 * j - 2, 2 * j - 1
        w = Multivector.blade(sig, [a, b])
        if (w * w).scalar_value().real < 0:
            w = 1j * w
        e = e * (half * (Multivector.unit(sig) + w))
    return ideal_from_idempotent(e)


def restricted_sigma_product(
    ideal: IdempotentIdeal, sigma: AdmissibleRealStructure
) -> tuple[np.ndarray, FormSignatureReport]:
    """Gram matrix of (.,.)_sigma on the ideal basis and its classification."""
    m = ideal.dim
    G = np.empty((m, m), dtype=np.complex128)
    for i, x in enumerate(ideal.ideal_basis):
        for j, y in enumerate(ideal.ideal_basis):
            G[i, j] = sigma_product(sigma, x, y)
    G = 0.5 * (G + G.conj().T)
    return G, hermitian_inertia(G)


def is_isotropic_ideal(ideal: IdempotentIdeal, sigma: AdmissibleRealStructure) -> bool:
    """True iff e * e^{x_sigma} = 0 (the sigma-product vanishes on S_e)."""
    prod = ideal.e * sigma.sigma_cross(ideal.e)
    return prod.norm_max() <= 1e-12


def canonical_selfadjoint_idempotent(
    ideal: IdempotentIdeal, sigma: AdmissibleRealStructure
) -> Multivector:
    """The unique primitive idempotent f with f^{x_sigma} = f and S_f = S_e.

    Following the construction: with p = L_e acting on S_e, the image of
    p^x (adjoint for the restricted sigma-product) is a non-isotropic
    line Cv; the orthogonal projection q onto it is q(psi) = eps(v,psi)v,
    and f = L^{-1}(q) = q(e).
    """
    if is_isotropic_ideal(ideal, sigma):
        raise DegenerateIdealError("e*e^{x_sigma} = 0: the sigma-product vanishes on S_e")
    sig = ideal.sig
    G, _ = restricted_sigma_product(ideal, sigma)
    basis_mat = ideal.coordinate_matrix()  # blade coords, columns = basis
    coords = np.linalg.pinv(basis_mat)

    def to_coords(x: Multivector) -> np.ndarray:
        return coords @ x.dense()

    def from_coords(c: np.ndarray) -> Multivector:
        return Multivector.from_dense(sig, basis_mat @ c, tol=1e-13)

    # p = L_e in the ideal basis
    p = np.column_stack([to_coords(ideal.e * b) for b in ideal.ideal_basis])
    p_adj = np.linalg.solve(G, p.conj().T @ G)
    # im(p_adj) is one-dimensional; take the dominant singular direction
    u, s, _ = np.linalg.svd(p_adj)
    v = u[:, 0]
    vv = (v.conj() @ G @ v).real
    if abs(vv) < 1e-12:
        raise DegenerateIdealError("projection line is isotropic")
    eps = 1.0 if vv > 0 else -1.0
    v = v / np.sqrt(abs(vv))
    q = eps * np.outer(v, v.conj() @ G)
    f = from_coords(q @ to_coords(ideal.e))
    return f


def cstar_norm(sigma: AdmissibleRealStructure, a: Multivector) -> float:
    """||a||_{inf,sigma}: operator norm of left multiplication by a
    in a (.,.)_sigma-orthonormal basis.  Requires Euclidean sigma."""
    if not is_euclidean(sigma):
        raise ValueError("the C*-norm is only defined for Euclidean real structures")
    sig = a.sig
    G = sigma_product_gram(sigma)
    G = 0.5 * (G + G.conj().T)
    L = np.column_stack(
        [(a * Multivector(sig, {mask: 1.0})).dense() for mask in range(1 << sig.n)]
    )
    T = sla.cholesky(G, lower=False)  # G = T^H T
    W = T @ L @ np.linalg.inv(T)
    return float(np.linalg.norm(W, 2))


def cstar_identity_check(sigma: AdmissibleRealStructure, a: Multivector) -> float:
    """| ||a^{x_sigma} a|| - ||a||^2 | for the C*-norm."""
    na = cstar_norm(sigma, a)
    return abs(cstar_norm(sigma, sigma.sigma_cross(a) * a) - na * na)


def rho_operator_norm(sigma: AdmissibleRealStructure, a: Multivector) -> float:
    """Operator norm of rho(a) w.r.t. the sigma-compatible scalar product."""
    if not is_euclidean(sigma):
        raise ValueError("requires an Euclidean real structure")
    sig = a.sig
    g = build_gammas(sig)
    beta = build_krein_form(g)
    beta_sigma = sigma_compatible_product(beta, g, sigma)
    w = np.linalg.eigvalsh(beta_sigma)
    if w[-1] < 0:
        beta_sigma = -beta_sigma
    elif w[0] < 0:
        raise ValueError("sigma-compatible form is not definite")
    T = sla.cholesky(0.5 * (beta_sigma + beta_sigma.conj().T), lower=False)
    W = T @ represent(g, a) @ np.linalg.inv(T)
    return float(np.linalg.norm(W, 2))


def canonical_rotor(
    sigma: AdmissibleRealStructure, sigma_prime: AdmissibleRealStructure
) -> tuple[Multivector, Multivector]:
    """Clifford-group element u with u b u^x = b', i.e. the square root
    of the rotor b' b^{-1} attached to the pair of structures.

    Conjugation by u carries the involution x_sigma to x_sigma' (and
    hence the C*-norm isometrically).  Conjugating by the product
    b' b^{-1} itself would rotate by twice the angle between b and b'.
    Returns (u, u^{-1}), with u normalized to unit spinor norm.
    """
    t = sigma_prime.b * sigma.b_inv
    u = Multivector.unit(sigma.b.sig) + t
    if u.norm_max() < 1e-9:
        u = t  # antipodal pair: b' b^{-1} = -1 is its own square root
    norm = (u * u.cross()).scalar_value(1e-9 * u.norm_max() ** 2)
    u = (1.0 / np.sqrt(abs(norm.real))) * u
    u_inv = u.cross() if norm.real > 0 else -u.cross()
    return u, u_inv


def euclidean_isomorphism(
    sigma: AdmissibleRealStructure, sigma_prime: AdmissibleRealStructure, a: Multivector
) -> Multivector:
    """The canonical isomorphism carrying the sigma C*-structure to the
    sigma' one, as inner conjugation by the square root of b' b^{-1}."""
    u, u_inv = canonical_rotor(sigma, sigma_prime)
    return u * a * u_inv


def span_equal(a: IdempotentIdeal, b: IdempotentIdeal, tol: float = SPAN_TOL) -> bool:
    """Equality of ideal spans via the rank of the stacked coordinates."""
    ma, mb = a.coordinate_matrix(), b.coordinate_matrix()
    stacked = np.column_stack([ma, mb])
    return (
        np.linalg.matrix_rank(stacked, tol=tol)
        == np.linalg.matrix_rank(ma, tol=tol)
        == np.linalg.matrix_rank(mb, tol=tol)
    )
