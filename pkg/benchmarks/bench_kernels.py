"""Compare the numba and numpy backends of the Fock-space kernels.

    python3 benchmarks/bench_kernels.py [--N 6] [--d 6] [--repeat 5]
"""

import argparse
import json
import timeit

import numpy as np

from bosonic_polytope import kernels
from bosonic_polytope._accel import HAS_NUMBA


def _hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


def bench(N: int, d: int, repeat: int) -> dict:
    rng = np.random.default_rng(0)
    _, occ = kernels.basis_arrays(N, d)
    t = _hermitian(rng, d)
    g = _hermitian(rng, len(occ))
    g = g @ g.conj().T
    g /= np.trace(g)
    cases = {
        "one_body_matrix": lambda nb: kernels.one_body_matrix(occ, t, use_numba=nb),
        "one_rdm": lambda nb: kernels.one_rdm(g, occ, use_numba=nb),
    }
    out = {"N": N, "d": d, "dim": len(occ), "numba_available": HAS_NUMBA, "kernels": {}}
    for name, fn in cases.items():
        row = {}
        backends = [False, True] if HAS_NUMBA else [False]
        for nb in backends:
            fn(nb)  # warm-up, includes JIT compilation
            row["numba" if nb else "numpy"] = min(timeit.repeat(lambda: fn(nb), number=1, repeat=repeat))
        if HAS_NUMBA:
            row["max_abs_diff"] = float(np.abs(fn(True) - fn(False)).max())
            row["speedup"] = row["numpy"] / row["numba"]
        out["kernels"][name] = row
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=6)
    ap.add_argument("--d", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(json.dumps(bench(args.N, args.d, args.repeat), indent=2))


if __name__ == "__main__":
    main()
