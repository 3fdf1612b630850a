"""Compare the compiled kernel extension against the pure-Python fallback.

Both backends do the same arbitrary-precision integer work (Python ints all
the way down), so the compiled path only removes interpreter overhead from
the loop structure; the gap narrows as entries grow and gmp time dominates.

Run:  python3 benchmarks/bench_kernels.py
"""

import random
import time

from monoheight import _purekernels
from monoheight.kernels import BACKEND

try:
    from monoheight import _fastkernels
except ImportError:
    _fastkernels = None


def make_matrix(rng, n, bits):
    return [[rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(n)]
            for _ in range(n)]


def best_of(fn, repeats=5):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench_case(name, pure_fn, fast_fn, repeats):
    tp = best_of(pure_fn, repeats)
    if fast_fn is None:
        print(f"{name:34s} pure {tp * 1e3:9.3f} ms   (no extension built)")
        return
    tf = best_of(fast_fn, repeats)
    print(f"{name:34s} pure {tp * 1e3:9.3f} ms   compiled {tf * 1e3:9.3f} ms"
          f"   speedup {tp / tf:5.2f}x")


def main():
    print(f"active backend: {BACKEND}")
    rng = random.Random(7)
    cases = [
        ("mat_mul 4x4, 64-bit entries", 4, 64, 2000, 400),
        ("mat_mul 4x4, 4096-bit entries", 4, 4096, 200, 40),
        ("mat_mul 8x8, 256-bit entries", 8, 256, 500, 100),
        ("mat_pow 3x3 ^64, 8-bit entries", 3, 8, 50, 10),
    ]
    for name, n, bits, iters, repeats in cases:
        a = make_matrix(rng, n, bits)
        b = make_matrix(rng, n, bits)
        if "mat_pow" in name:
            def pure():
                for _ in range(iters):
                    _purekernels.mat_pow(a, 64)

            fast = None
            if _fastkernels is not None:
                def fast():
                    for _ in range(iters):
                        _fastkernels.mat_pow(a, 64)
        else:
            def pure():
                for _ in range(iters):
                    _purekernels.mat_mul(a, b)

            fast = None
            if _fastkernels is not None:
                def fast():
                    for _ in range(iters):
                        _fastkernels.mat_mul(a, b)
        bench_case(name, pure, fast, repeats)

    # agreement spot check while both implementations are loaded
    if _fastkernels is not None:
        m = make_matrix(rng, 5, 128)
        assert _purekernels.mat_mul(m, m) == _fastkernels.mat_mul(m, m)
        assert _purekernels.mat_pow(m, 7) == _fastkernels.mat_pow(m, 7)
        assert _purekernels.max_bits(m) == _fastkernels.max_bits(m)
        print("agreement check: ok")


if __name__ == "__main__":
    main()
