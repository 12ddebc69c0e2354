"""Benchmark the compiled blade kernel against the pure-Python fallback.

Times dense geometric products of random multivectors for a few algebra
sizes.  Both backends are imported directly, so this does not depend on
the KREIN_CLIFFORD_PURE selection.

Usage: python3 benchmarks/bench_blade.py [--repeats 5]
"""

import argparse
import time

import numpy as np

from krein_clifford import _blade_py

try:
    from krein_clifford import _blade_cy
except ImportError:
    _blade_cy = None


def bench(impl, keys, vals, p, n, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        impl.gp_dense(keys, vals, keys, vals, p, n)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    print(f"{'(p,q)':>8} {'terms':>6} {'python':>12} {'cython':>12} {'speedup':>8}")
    for p, q in [(1, 1), (2, 2), (1, 5), (4, 4), (5, 5)]:
        n = p + q
        dim = 1 << n
        keys = np.arange(dim, dtype=np.int64)
        vals = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        t_py = bench(_blade_py, keys, vals, p, n, args.repeats)
        if _blade_cy is not None:
            out_py = _blade_py.gp_dense(keys, vals, keys, vals, p, n)
            out_cy = _blade_cy.gp_dense(keys, vals, keys, vals, p, n)
            assert np.abs(out_py - out_cy).max() < 1e-12, "backend mismatch"
            t_cy = bench(_blade_cy, keys, vals, p, n, args.repeats)
            print(f"({p},{q})".rjust(8) + f" {dim:>6} {t_py*1e3:>10.3f}ms {t_cy*1e3:>10.3f}ms {t_py/t_cy:>7.1f}x")
        else:
            print(f"({p},{q})".rjust(8) + f" {dim:>6} {t_py*1e3:>10.3f}ms {'n/a':>12} {'n/a':>8}")


if __name__ == "__main__":
    main()
