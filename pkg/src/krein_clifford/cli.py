"""Command-line interface.

All verbs emit a JSON payload (the contract) or an aligned text rendering
derived from it.  The process exit code is 0 exactly when the status is
ok.  Randomized suites read their seed from KREIN_CLIFFORD_SEED
(default 0).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import algebraic_spinors as asp
from . import signature_detect as sd
from . import spinor_rep as sr
from . import verify as vf
from . import wick_lattice as wl
from .clifford_core import (
    AdmissibleRealStructure,
    Multivector,
    Signature,
    gram_signature_sigma_product,
    is_euclidean,
    make_real_structure,
    make_sigma_from_vector,
)
from .formats import matrix_to_json, multivector_from_text, multivector_to_text


def _seed() -> int:
    return int(os.environ.get("KREIN_CLIFFORD_SEED", "0"))


def _sig(args) -> Signature:
    return Signature(args.p, args.q)


def _parse_structure(sig: Signature, spec: str) -> AdmissibleRealStructure:
    if spec.strip() == "c":
        return AdmissibleRealStructure.canonical(sig)
    return make_real_structure(multivector_from_text(sig, spec))


def _emit(payload: dict, fmt: str, text_lines: list[str]) -> int:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(text_lines))
    return 0 if payload.get("status", "ok") == "ok" else 1


def cmd_ko_table(args) -> int:
    n_list = [int(x) for x in args.n.split(",")]
    rows = []
    for n in n_list:
        sig = sr.case_signature(args.case, n)
        rows.append({"n": n, **sr.ko_signs(sig, args.case).as_dict()})
    payload = {"status": "ok", "case": args.case, "rows": rows}
    cols = ["n", "ko_dim_mod8", "eps", "eps_dprime", "eps_tilde", "kappa", "kappa_tilde"]
    lines = ["  ".join(f"{c:>11}" for c in cols)]
    for r in rows:
        lines.append("  ".join(f"{r[c]:>11}" for c in cols))
    return _emit(payload, args.format, lines)


def cmd_cone(args) -> int:
    sig = _sig(args)
    v = [float(x) for x in args.v.split(",")]
    if len(v) != sig.n:
        raise ValueError(f"expected {sig.n} components, got {len(v)}")
    g = sr.build_gammas(sig)
    beta = sr.build_krein_form(g)
    verdict = sd.cone_test(sig, g, beta, v)
    payload = {"status": "ok", "sig": [sig.p, sig.q], "v": v, **verdict.as_dict()}
    lines = [
        f"signature ({sig.p},{sig.q})  v = {args.v}",
        f"in_cone   : {verdict.in_cone}",
        f"component : {verdict.component}",
        f"inertia   : {payload['inertia']}",
    ]
    return _emit(payload, args.format, lines)


def cmd_garling(args) -> int:
    sig = _sig(args)
    sigma = _parse_structure(sig, args.b)
    rep = gram_signature_sigma_product(sigma)
    payload = {
        "status": "ok",
        "sig": [sig.p, sig.q],
        "b": multivector_to_text(sigma.b),
        "euclidean": is_euclidean(sigma),
        "inertia": [rep.n_plus, rep.n_minus, rep.n_zero],
        "classification": rep.classification,
    }
    lines = [
        f"signature ({sig.p},{sig.q})  b = {payload['b']}",
        f"euclidean      : {payload['euclidean']}",
        f"classification : {rep.classification}  (n+,n-,n0) = {tuple(payload['inertia'])}",
    ]
    return _emit(payload, args.format, lines)


def cmd_wick(args) -> int:
    sig = _sig(args)
    if sig.q != 0:
        raise ValueError("the wick verb rotates a Euclidean (q=0) lattice operator")
    spec = wl.LatticeSpec(sig, args.sites, args.spacing)
    if spec.total_dim > wl.DENSE_CAP:
        raise ValueError(
            f"operator dimension {spec.total_dim} exceeds the dense cap {wl.DENSE_CAP}"
        )
    spec, g, beta, D, beta_field = wl.flat_dirac_package(sig, args.sites, args.spacing)
    if args.to == "antilorentz":
        target = Signature(1, sig.n - 1)
        b = make_sigma_from_vector(Multivector.basis_vector(sig, 1))
    else:
        target = Signature(sig.n - 1, 1)
        b = make_sigma_from_vector(Multivector.basis_vector(sig, sig.n), graded=True)
    B = wl.build_fundamental_symmetry(spec, g, b)
    D_sigma = wl.wick_rotate_operator(D, B)
    _, g_t, beta_t, D_direct, beta_field_t = wl.flat_dirac_package(sig=target, sites=args.sites, spacing=args.spacing)

    import scipy.sparse as sp

    C_E = wl.build_field_charge_conjugation(spec, g, beta)
    C_sigma = sr.AntilinearOp(B.matrix @ sp.csr_matrix(C_E.m))
    residuals = {
        "direct_compare": wl.operator_max_diff(D_sigma, D_direct),
        "selfadjoint": wl.krein_selfadjoint_residual(D_sigma, beta_field_t),
        "anticommute": wl.anticommutation_residual(D_sigma, C_sigma),
        "roundtrip": wl.operator_max_diff(wl.inverse_wick(D_sigma, B), D),
    }
    k = min(8, spec.total_dim)
    spec_before = wl.spectrum(D, k=k, seed=_seed())
    spec_after = wl.spectrum(D_sigma, k=k, seed=_seed())
    ok = all(r <= 1e-12 for r in residuals.values())
    payload = {
        "status": "ok" if ok else "fail",
        "sig": [sig.p, sig.q],
        "target": [target.p, target.q],
        "sites": args.sites,
        "spacing": args.spacing,
        "residuals": residuals,
        "spectrum_before": [[z.real, z.imag] for z in spec_before],
        "spectrum_after": [[z.real, z.imag] for z in spec_after],
    }
    lines = [f"({sig.p},{sig.q}) N={args.sites} -> ({target.p},{target.q})"]
    lines += [f"{k:<15}: {v:.3e}" for k, v in residuals.items()]
    lines.append(f"status: {payload['status']}")
    return _emit(payload, args.format, lines)


def cmd_csnorm(args) -> int:
    sig = _sig(args)
    sigma = _parse_structure(sig, args.b)
    a = multivector_from_text(sig, args.a)
    norm = asp.cstar_norm(sigma, a)
    resid = asp.cstar_identity_check(sigma, a)
    rho_norm = asp.rho_operator_norm(sigma, a)
    ok = resid <= 1e-9 * max(norm * norm, 1.0) and abs(norm - rho_norm) <= 1e-9 * max(norm, 1.0)
    payload = {
        "status": "ok" if ok else "fail",
        "sig": [sig.p, sig.q],
        "b": multivector_to_text(sigma.b),
        "a": multivector_to_text(a),
        "norm": norm,
        "rho_norm": rho_norm,
        "cstar_identity_residual": resid,
    }
    lines = [
        f"||a||_inf,sigma     = {norm:.12g}",
        f"||rho(a)||          = {rho_norm:.12g}",
        f"C*-identity residual = {resid:.3e}",
        f"status: {payload['status']}",
    ]
    return _emit(payload, args.format, lines)


def cmd_ideal(args) -> int:
    sig = _sig(args)
    sigma = _parse_structure(sig, args.b)
    if args.e is not None:
        ideal = asp.ideal_from_idempotent(multivector_from_text(sig, args.e))
    else:
        ideal = asp.build_primitive_idempotent(sig)
    G, rep = asp.restricted_sigma_product(ideal, sigma)
    payload = {
        "status": "ok",
        "sig": [sig.p, sig.q],
        "e": multivector_to_text(ideal.e),
        "gram_inertia": [rep.n_plus, rep.n_minus, rep.n_zero],
        "classification": rep.classification,
        "isotropic": asp.is_isotropic_ideal(ideal, sigma),
    }
    lines = [
        f"e = {payload['e']}",
        f"Gram classification: {rep.classification}  (n+,n-,n0) = {tuple(payload['gram_inertia'])}",
    ]
    if not payload["isotropic"]:
        f = asp.canonical_selfadjoint_idempotent(ideal, sigma)
        residuals = {
            "f_selfadjoint": (sigma.sigma_cross(f) - f).norm_max(),
            "f_idempotent": (f * f - f).norm_max(),
        }
        tau_f = f.normalized_trace()
        if any(r > 1e-10 for r in residuals.values()):
            payload["status"] = "fail"
        payload.update(
            f=multivector_to_text(f),
            tau_f=[tau_f.real, tau_f.imag],
            residuals=residuals,
        )
        lines.append(f"f = {payload['f']}")
        lines.append(f"tau_n(f) = {tau_f.real:.12g}")
    lines.append(f"status: {payload['status']}")
    return _emit(payload, args.format, lines)


def cmd_gammas(args) -> int:
    sig = _sig(args)
    g = sr.build_gammas(sig)
    beta = sr.build_krein_form(g)
    chi = sr.chirality(g)
    C, eps_tilde, kappa_tilde = sr.build_charge_conjugation(g, beta)
    payload = {
        "status": "ok",
        "sig": [sig.p, sig.q],
        "dim": g.dim,
        "gammas": [matrix_to_json(m) for m in g.gammas],
        "beta": matrix_to_json(beta.beta),
        "chirality": matrix_to_json(chi),
        "charge_conjugation": matrix_to_json(C.m),
        "eps_tilde": eps_tilde,
        "kappa_tilde": kappa_tilde,
    }
    lines = [f"({sig.p},{sig.q}): {sig.n} gammas of dimension {g.dim}"]
    for i, m in enumerate(g.gammas, 1):
        lines.append(f"gamma_{i} =")
        lines += ["  " + "  ".join(f"{z:+.3f}" for z in row) for row in m]
    return _emit(payload, args.format, lines)


def cmd_verify(args) -> int:
    results = vf.run_suite(args.suite, seed=_seed())
    ok = all(r[1] for r in results)
    payload = {
        "status": "ok" if ok else "fail",
        "suite": args.suite,
        "seed": _seed(),
        "results": [{"name": n, "ok": o, "detail": d} for n, o, d in results],
    }
    lines = [f"{'PASS' if o else 'FAIL'}  {n:<40} {d}" for n, o, d in results]
    lines.append(f"status: {payload['status']}")
    return _emit(payload, args.format, lines)


def _add_sig_args(p):
    p.add_argument("--p", type=int, required=True, help="number of +1 generators")
    p.add_argument("--q", type=int, required=True, help="number of -1 generators")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="krein-clifford",
        description="Clifford algebras, Krein products and Wick rotation at desk scale.",
    )
    ap.add_argument("--format", choices=("json", "text"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ko-table", help="KO sign table computed from the operators")
    p.add_argument("--case", choices=sr.CASES, required=True)
    p.add_argument("--n", default="2,4,6,8", help="comma-separated even dimensions")
    p.set_defaults(func=cmd_ko_table)

    p = sub.add_parser("cone", help="light-cone membership via the spinor form")
    _add_sig_args(p)
    p.add_argument("--v", required=True, help="comma-separated vector components")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("garling", help="blade-Gram inertia of the sigma-product")
    _add_sig_args(p)
    p.add_argument("--b", default="c", help="rotation element (multivector text, or `c`)")
    p.set_defaults(func=cmd_garling)

    p = sub.add_parser("wick", help="Wick-rotate a flat Euclidean lattice Dirac operator")
    _add_sig_args(p)
    p.add_argument("--sites", type=int, required=True)
    p.add_argument("--spacing", type=float, default=1.0)
    p.add_argument("--to", choices=("antilorentz", "lorentz"), default="antilorentz")
    p.set_defaults(func=cmd_wick)

    p = sub.add_parser("csnorm", help="C*-norm of an element for a Euclidean structure")
    _add_sig_args(p)
    p.add_argument("--b", default="c")
    p.add_argument("--a", required=True, help="element (multivector text)")
    p.set_defaults(func=cmd_csnorm)

    p = sub.add_parser("ideal", help="sigma-product on an algebraic spinor module")
    _add_sig_args(p)
    p.add_argument("--b", default="c")
    p.add_argument("--e", default=None, help="idempotent (default: canonical construction)")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("gammas", help="gamma matrices, beta, chirality, charge conjugation")
    _add_sig_args(p)
    p.set_defaults(func=cmd_gammas)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", choices=vf.SUITES, default="all")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, np.linalg.LinAlgError) as exc:
        print(json.dumps({"status": "fail", "error": str(exc)}, sort_keys=True)
              if args.format == "json" else f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
