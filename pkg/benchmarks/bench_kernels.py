"""Compare the compiled and pure-Python minor kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times `all_minors` and `bareiss_det` on integer-scaled transfer operators
of growing width, and on a matrix with entries too large for the int64
fast path.
"""

import argparse
import time

from hcontinuation import _kernels_py, linalg
from hcontinuation.network import build_random
from hcontinuation.transfer import modified_h

try:
    from hcontinuation import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, arg, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(arg)
        best = min(best, time.perf_counter() - t)
    return best


def cases():
    for R in (3, 4, 5):
        H = modified_h(build_random(R, 4, 0), 2).matrix
        N, _ = linalg.integer_row_scaled(H)
        yield f"operator {2 * R - 1}x{2 * R - 1}", N
    big = [[(i + 1) * 10**12 + j for j in range(7)] for i in range(7)]
    yield "7x7 huge entries", big


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the Python timings are shown")
    print(f"{'case':<20} {'kernel':<12} {'python s':>10} {'cython s':>10} {'speedup':>8}  path")
    for name, N in cases():
        for kname in ("all_minors", "bareiss_det"):
            tp = best_of(getattr(_kernels_py, kname), N, args.repeat)
            if _ckernels is None:
                print(f"{name:<20} {kname:<12} {tp:>10.4f}")
                continue
            assert getattr(_ckernels, kname)(N) == getattr(_kernels_py, kname)(N)
            tc = best_of(getattr(_ckernels, kname), N, args.repeat)
            path = "int64" if _ckernels.fits_int64(N) else "object"
            print(f"{name:<20} {kname:<12} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x  {path}")


if __name__ == "__main__":
    main()
