"""Compare the subset-lcm kernels: numba, numpy and the exact Python reference.

    python benchmarks/bench_kernels.py [--repeat 200] [--max-len 12]

Coordinates are drawn so that their product stays below 2^62, the range in
which the machine-integer kernels are exact.
"""
import argparse
import random
import time

import numpy as np

from wpscoh import _kernels


def weights(rng, length):
    while True:
        coords = [rng.randint(1, 30) for _ in range(length)]
        if np.prod(coords, dtype=object) < _kernels.INT64_SAFE:
            return coords


def timed(fn, inputs):
    t0 = time.perf_counter()
    for c in inputs:
        fn(c)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--max-len", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    try:
        t0 = time.perf_counter()
        _kernels.subset_lcms_numba(np.array([2, 3], dtype=np.int64))
        print(f"numba compile: {time.perf_counter() - t0:.2f}s")
        have_numba = True
    except ImportError:
        print("numba not installed; skipping the jitted kernel")
        have_numba = False

    print(f"{'len':>4} {'python':>10} {'numpy':>10} {'numba':>10}")
    for length in range(3, args.max_len + 1):
        inputs = [weights(rng, length) for _ in range(args.repeat)]
        arrays = [np.array(c, dtype=np.int64) for c in inputs]
        for c, a in zip(inputs[:5], arrays[:5]):
            ref = _kernels.subset_lcms_python(c)
            assert list(_kernels.subset_lcms_numpy(a)) == ref
            if have_numba:
                assert list(_kernels.subset_lcms_numba(a)) == ref
        py = timed(_kernels.subset_lcms_python, inputs)
        npy = timed(_kernels.subset_lcms_numpy, arrays)
        nb = timed(_kernels.subset_lcms_numba, arrays) if have_numba else float("nan")
        scale = 1e3 / args.repeat
        print(f"{length:>4} {py * scale:>9.3f}ms {npy * scale:>9.3f}ms {nb * scale:>9.3f}ms")


if __name__ == "__main__":
    main()
