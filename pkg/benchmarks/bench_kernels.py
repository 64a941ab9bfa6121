#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy fallbacks.

Run from the repository root:

    python benchmarks/bench_kernels.py

The numba path is warmed once before timing so JIT compilation is not
charged to the measurement.
"""

import time

import numpy as np

from frameproof_lab import _kernels as kernels


def timeit(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    rng = np.random.default_rng(7)
    words = rng.integers(1, 8, size=(1500, 16))
    # top bit cleared everywhere: the scan can never cover the target
    masks = rng.integers(0, 1 << 15, size=4000, dtype=np.uint64)
    target = np.uint64((1 << 16) - 1)
    supports = sorted({int(x) for x in rng.integers(1, 1 << 20, size=300)})

    cases = [
        (
            "min_pairwise_distance (1500x16)",
            lambda b: kernels.min_pairwise_distance(words, backend=b),
        ),
        (
            "agreement_masks (1500x16, all foci)",
            lambda b: [kernels.agreement_masks(words, f, backend=b) for f in range(0, 1500, 50)],
        ),
        (
            "cover_pair_scan (4000 masks, no hit)",
            lambda b: kernels.cover_pair_scan(masks, target, backend=b),
        ),
        (
            "max_subfamily_avoiding (m=20, 300 supports)",
            lambda b: kernels.max_subfamily_avoiding(supports, 20, backend=b),
        ),
    ]

    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    for b in backends:
        for _, fn in cases:
            fn(b)  # warm-up (JIT compile / cache load)

    print(f"{'kernel':<45}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in cases:
        times = [timeit(lambda b=b: fn(b)) for b in backends]
        row = f"{name:<45}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
