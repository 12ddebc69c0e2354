"""Text and JSON serialization of multivectors and matrices.

Text form: terms `coeff*e_<indices>` joined by ` + `, e.g.
``1.0*e_1 + 2.0i*e_23``; a scalar term is a bare number.  Imaginary
units are written `i` (accepted on input as `i` or `j`).
"""

from __future__ import annotations

import re

import numpy as np

from .clifford_core import Multivector, Signature


def _mask_indices(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def format_complex(z: complex) -> str:
    re_, im_ = z.real, z.imag
    if im_ == 0:
        return repr(re_)
    if re_ == 0:
        return f"{im_!r}i"
    sign = "+" if im_ >= 0 else "-"
    return f"({re_!r}{sign}{abs(im_)!r}i)"


def multivector_to_text(mv: Multivector) -> str:
    if not mv.coeffs:
        return "0"
    parts = []
    for mask in sorted(mv.coeffs):
        z = mv.coeffs[mask]
        coeff = format_complex(z)
        if mask == 0:
            parts.append(coeff)
        else:
            label = "e_" + "".join(str(i) for i in _mask_indices(mask))
            parts.append(f"{coeff}*{label}")
    return " + ".join(parts)


_TERM_RE = re.compile(
    r"^(?P<coeff>[^*]*?)\s*\*?\s*(?P<blade>e_[\d]+)?$"
)


def _parse_coeff(text: str) -> complex:
    text = text.strip().replace(" ", "")
    if text in ("", "+"):
        return 1.0
    if text == "-":
        return -1.0
    text = text.replace("i", "j").replace("J", "j")
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    return complex(text)


def multivector_from_text(sig: Signature, text: str) -> Multivector:
    """Parse `coeff*e_ij + ...`; `c` or `1` denote the scalar unit."""
    text = text.strip()
    if text in ("c", ""):
        return Multivector.unit(sig)
    text = text.replace(" - ", " + -")
    coeffs: dict[int, complex] = {}
    # split on + that are term separators (not inside parentheses)
    terms, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0 and cur.strip() and not cur.rstrip().endswith(("e", "*", "(")):
            terms.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        terms.append(cur)
    for term in terms:
        term = term.strip()
        m = _TERM_RE.match(term)
        if not m or (m.group("coeff") is None and m.group("blade") is None):
            raise ValueError(f"cannot parse term {term!r}")
        z = _parse_coeff(m.group("coeff") or "")
        blade = m.group("blade")
        if blade is None:
            mask = 0
        else:
            idx = [int(c) for c in blade[2:]]
            if len(set(idx)) != len(idx):
                raise ValueError(f"repeated index in {blade!r}")
            if any(i < 1 or i > sig.n for i in idx):
                raise ValueError(f"index out of range in {blade!r} for n={sig.n}")
            mask = 0
            for i in idx:
                mask |= 1 << (i - 1)
        coeffs[mask] = coeffs.get(mask, 0.0) + z
    return Multivector(sig, coeffs)


def multivector_to_json(mv: Multivector) -> dict:
    return {
        "sig": [mv.sig.p, mv.sig.q],
        "terms": [
            {
                "blade": _mask_indices(mask),
                "re": float(mv.coeffs[mask].real),
                "im": float(mv.coeffs[mask].imag),
            }
            for mask in sorted(mv.coeffs)
        ],
    }


def multivector_from_json(doc: dict) -> Multivector:
    sig = Signature(*doc["sig"])
    coeffs: dict[int, complex] = {}
    for term in doc["terms"]:
        mask = 0
        for i in term["blade"]:
            mask |= 1 << (i - 1)
        coeffs[mask] = coeffs.get(mask, 0.0) + complex(term["re"], term["im"])
    return Multivector(sig, coeffs)


def matrix_to_json(m: np.ndarray) -> list:
    """Row-major nested lists of [re, im] pairs."""
    m = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(rows: list) -> np.ndarray:
    return np.array([[complex(re_, im_) for re_, im_ in row] for row in rows])
