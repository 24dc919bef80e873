"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from peertrust import kernels


def best_of(fn, repeat):
    fn()  # warm-up; triggers compilation on the numba path
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def community(n, rng):
    tot = rng.integers(0, 20, size=(n, n))
    pos = rng.integers(0, 20, size=(n, n)) % (tot + 1)
    neg = rng.integers(0, 20, size=(n, n)) % (tot - pos + 1)
    for a in (pos, neg, tot):
        np.fill_diagonal(a, 0)
    return pos, neg, tot, rng.integers(1, 15, n), rng.random((n, n)) < 0.8


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    rng = np.random.default_rng(0)
    backends = {"numpy": kernels.numpy_backend}
    if kernels.numba_backend is not None:
        backends["numba"] = kernels.numba_backend

    rows = []
    for size in (100_000, 1_000_000):
        b, c, t = rng.uniform(1, 30, size), rng.uniform(0.05, 3, size), rng.uniform(0, 20, size)
        for name, be in backends.items():
            rows.append((f"gompertz_decay n={size}", name, best_of(lambda: be.gompertz_decay(b, c, t), args.repeat)))
    for n in (50, 100, 200):
        data = community(n, rng)
        for name, be in backends.items():
            rows.append((f"trust_matrix n={n}", name, best_of(lambda: be.trust_matrix(*data), args.repeat)))

    print(f"{'kernel':<28}{'backend':<8}{'best (ms)':>12}")
    for kernel, name, secs in rows:
        print(f"{kernel:<28}{name:<8}{secs * 1e3:>12.3f}")


if __name__ == "__main__":
    main()
