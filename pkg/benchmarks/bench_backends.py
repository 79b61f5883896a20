#!/usr/bin/env python3
"""Time the hot estimator kernels on the numba and numpy backends.

Runs each batch kernel on a (trials, n) observation block, reports wall time
per call and the speedup of numba over numpy, and cross-checks that both
backends agree.  Usage:

    python benchmarks/bench_backends.py --trials 200000 --n 10 --s 4 --repeat 5
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sparsebound import kernels  # noqa: E402


def time_call(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=200_000)
    parser.add_argument("--n", type=int, default=10)
    parser.add_argument("--s", type=int, default=4)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    y = rng.standard_normal((args.trials, args.n))
    support_idx = np.arange(args.s, dtype=np.int64)
    scaled = rng.standard_normal(args.s)
    threshold = 2.146

    cases = [
        ("ml", (kernels.numpy_ml_batch, kernels.numba_ml_batch), (y, args.s)),
        ("ht", (kernels.numpy_ht_batch, kernels.numba_ht_batch), (y, threshold)),
        ("oracle", (kernels.numpy_oracle_batch, kernels.numba_oracle_batch),
         (y, support_idx, scaled)),
    ]

    print(f"block shape ({args.trials}, {args.n}), best of {args.repeat} runs")
    print(f"numba available: {kernels.HAVE_NUMBA}  active backend: {kernels.BACKEND}")
    print(f"{'kernel':<8} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9}  agree")
    for name, (numpy_fn, numba_fn), call_args in cases:
        t_np = time_call(numpy_fn, *call_args, repeat=args.repeat)
        if numba_fn is None:
            print(f"{name:<8} {t_np * 1e3:>12.2f} {'n/a':>12} {'n/a':>9}  n/a")
            continue
        numba_fn(*call_args)  # JIT warmup outside the timed region
        t_nb = time_call(numba_fn, *call_args, repeat=args.repeat)
        agree = np.allclose(numpy_fn(*call_args), numba_fn(*call_args),
                            rtol=1e-12, atol=1e-14)
        print(f"{name:<8} {t_np * 1e3:>12.2f} {t_nb * 1e3:>12.2f} "
              f"{t_np / t_nb:>8.1f}x  {agree}")
        if not agree:
            print(f"  backend mismatch in {name}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
