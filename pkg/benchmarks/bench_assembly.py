"""Time potential-matrix assembly with the compiled kernel and the numpy fallback.

    python benchmarks/bench_assembly.py --nmax 40 80 120
"""

import argparse
import time

import numpy as np

from darkbox import BACKEND, Sector, enumerate_basis
from darkbox import _backend


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, nargs="+", default=[40, 80, 120])
    ap.add_argument("--c", type=float, default=0.3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["python"] + (["cython"] if BACKEND == "cython" else [])
    print(f"{'nmax':>5} {'N':>6} " + " ".join(f"{b:>10}" for b in backends) + "   speedup  max|diff|")
    for n_max in args.nmax:
        basis = enumerate_basis(Sector(1, 1), n_max)
        res = {}
        for b in backends:
            res[b] = best_of(lambda: _backend.potential_matrix(basis.ns, basis.ms, 1, args.c, backend=b), args.repeat)
        cols = " ".join(f"{res[b][0]:10.4f}" for b in backends)
        if len(backends) == 2:
            speed = res["python"][0] / res["cython"][0]
            diff = float(np.max(np.abs(res["python"][1] - res["cython"][1])))
            print(f"{n_max:5d} {len(basis):6d} {cols}   {speed:7.1f}x  {diff:.1e}")
        else:
            print(f"{n_max:5d} {len(basis):6d} {cols}   (compiled kernel not built)")


if __name__ == "__main__":
    main()
