"""Time each hot kernel under the numba and pure-numpy backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--scale 1.0]

Numba timings exclude the first (compiling) call. Outputs of the two
backends are compared on every input before timing.
"""

import argparse
import time

import numpy as np

from irate._kernels import _numpy

try:
    from irate._kernels import _numba
except ImportError:
    _numba = None


def _inputs(scale, rng):
    n = max(8, int(400 * scale))
    A = (rng.random((n, n)) < 4.0 / n).astype(np.float64)
    A[np.arange(n), (np.arange(n) + 1) % n] = 1.0  # one SCC
    B = A + np.eye(n)
    trace = rng.integers(0, 16, size=int(200_000 * scale)).astype(np.int64)
    rates = rng.random(int(500_000 * scale))
    sig = rng.random(max(8, int(3000 * scale))).astype(np.complex128)
    pow2 = rng.random(1 << max(3, int(np.log2(4096 * scale)))).astype(np.complex128)
    mags = np.abs(np.fft.fft(sig))
    pairs = rng.random((max(2, int(64 * scale)), 1000))
    return {
        "power_iterate": (B, 1e-12, 100_000),
        "lz78_parse": (trace, 16),
        "ceil_log2": (np.arange(1, trace.shape[0] + 1, dtype=np.int64),),
        "block_means": (rates, 1000),
        "dft_direct": (sig,),
        "fft_radix2": (pow2,),
        "circular_moving_average": (mags, 5),
        "pairwise_split_distance": (pairs - pairs.mean(axis=1, keepdims=True),
                                    pairs.mean(axis=1)),
    }


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, (bool, np.bool_)):
        return a == b
    return np.allclose(np.asarray(a), np.asarray(b), rtol=1e-9, atol=1e-9)


def _time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--scale", type=float, default=1.0, help="input size multiplier")
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    if _numba is None:
        raise SystemExit("numba is not importable; nothing to compare")

    inputs = _inputs(args.scale, np.random.default_rng(args.seed))
    print(f"{'kernel':<26}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}  match")
    for name, fargs in inputs.items():
        f_np, f_nb = getattr(_numpy, name), getattr(_numba, name)
        ok = _same(f_np(*fargs), f_nb(*fargs))  # also warms the jit
        t_np = _time(f_np, fargs, args.repeat)
        t_nb = _time(f_nb, fargs, args.repeat)
        print(f"{name:<26}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>10.1f}  {ok}")


if __name__ == "__main__":
    main()
