"""Time the compiled kernels against the NumPy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel with the best-of-N time for each backend and the
speed-up.  Inputs are fixed so runs are comparable.
"""

import argparse
import time

import numpy as np

from resbias import _pykernels

try:
    from resbias import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    rng = np.random.default_rng(0)
    ys = rng.uniform(-5, 5, 200_000)
    ys[::100] = np.round(ys[::100]) + 3e-7  # some guard-band points
    vals = rng.standard_normal(1_000_000)
    samples = np.exp(np.cos(2 * np.pi * np.arange(4096) / 4096)).astype(np.complex128)
    return [
        ("chi_naive P=1e5", lambda k: k.chi_naive(100_000, 0.4142135623730951)),
        ("chi_closed_batch 2e5 y, P=997", lambda k: k.chi_closed_batch(997, ys, 1e-12, 1e-6)),
        ("neumaier_sum 1e6", lambda k: k.neumaier_sum(vals)),
        ("dft_direct N=4096", lambda k: k.dft_direct(samples, 2047)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the fallback can be timed")
    print(f"{'kernel':<32}{'python [s]':>12}{'cython [s]':>12}{'speed-up':>10}")
    for name, fn in cases():
        tp = best_of(lambda: fn(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:<32}{tp:>12.4f}{'-':>12}{'-':>10}")
            continue
        tc = best_of(lambda: fn(_ckernels), args.repeat)
        print(f"{name:<32}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
