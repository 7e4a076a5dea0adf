"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each row reports the best-of-``repeat`` wall time for both backends, the
speedup, and whether the two outputs are identical.
"""
import argparse
import timeit

import numpy as np

from qpair.kernels import _pykernels, derive_key

try:
    from qpair.kernels import _ckernels
except ImportError:
    _ckernels = None


def cases(rng):
    for na, nb in [(2, 3), (4, 6), (8, 8)]:
        n = na * nb
        rho = np.ascontiguousarray(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        yield f"partial_trace {na}x{nb}", "partial_trace", (rho, na, nb, True), 2000
        yield f"partial_transpose {na}x{nb}", "partial_transpose", (rho, na, nb, True), 2000
    for k, shots in [(4, 10**5), (6, 10**6), (36, 10**6)]:
        cdf = np.cumsum(rng.dirichlet(np.ones(k)))
        cdf[-1] = 1.0
        yield f"sample_counts k={k} shots={shots:.0e}", "sample_counts", (cdf, derive_key(1), 0, shots), 3


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the fallback is available")
        return
    rng = np.random.default_rng(0)
    print(f"{'kernel':<34}{'python (s)':>12}{'cython (s)':>12}{'speedup':>9}  same")
    for label, name, call_args, number in cases(rng):
        times = {}
        outs = {}
        for tag, mod in (("python", _pykernels), ("cython", _ckernels)):
            fn = getattr(mod, name)
            outs[tag] = fn(*call_args)
            times[tag] = min(timeit.repeat(lambda: fn(*call_args), number=number, repeat=args.repeat)) / number
        same = np.array_equal(outs["python"], outs["cython"])
        print(f"{label:<34}{times['python']:>12.2e}{times['cython']:>12.2e}"
              f"{times['python'] / times['cython']:>8.1f}x  {same}")


if __name__ == "__main__":
    main()
