"""Time the compiled kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeats N] [--sizes 256,512,1024]

Each op runs on C-contiguous float64 planes; the reported figure is the best
wall time of N repeats after one warmup call. Both backends are imported
directly so a single process measures the pair.
"""

import argparse
import sys
import time

import numpy as np

from gpblend.kernels import _fallback

try:
    from gpblend.kernels import _native
except ImportError:
    print("compiled extension is not built; run pip install -e . first")
    sys.exit(1)

KERN5 = np.array([1.0, 4.0, 6.0, 4.0, 1.0]) / 16.0


def best_time(fn, repeats):
    fn()  # warmup
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def cases(n, rng):
    plane = np.ascontiguousarray(rng.random((n, n)))
    gx = np.ascontiguousarray(rng.random((n, n)))
    gy = np.ascontiguousarray(rng.random((n, n)))
    half = np.ascontiguousarray(rng.random((n // 2, n // 2)))
    return (
        ("conv_sep_replicate", lambda mod: mod.conv_sep_replicate(plane, KERN5)),
        ("down2", lambda mod: mod.down2(plane, KERN5)),
        ("up2", lambda mod: mod.up2(half, n, n, KERN5 * 2.0)),
        ("grad_forward", lambda mod: mod.grad_forward(plane)),
        ("div_backward", lambda mod: mod.div_backward(gx, gy)),
    )


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=7)
    parser.add_argument("--sizes", default="256,512,1024")
    args = parser.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(0)

    header = f"{'op':<20} {'size':>6} {'native ms':>10} {'python ms':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        for name, call in cases(n, rng):
            t_native = best_time(lambda: call(_native), args.repeats)
            t_python = best_time(lambda: call(_fallback), args.repeats)
            print(
                f"{name:<20} {n:>6} {t_native * 1e3:>10.3f} "
                f"{t_python * 1e3:>10.3f} {t_python / t_native:>8.2f}x"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
