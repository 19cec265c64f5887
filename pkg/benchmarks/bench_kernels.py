"""Compare the two batch-kernel backends on a full enumeration sweep.

Runs each kernel over every nonzero b x b {0,1} matrix (default b = 4,
65535 matrices) and reports per-backend wall times plus the speedup of the
compiled path over vectorized numpy.

    python benchmarks/bench_kernels.py [--b 4] [--horizon 12] [--repeat 3]
"""

import argparse
import time

import numpy as np

from matgrowth import _kernels_numpy

try:
    from matgrowth import _kernels_numba
except ImportError:
    _kernels_numba = None


def population(b: int) -> np.ndarray:
    count = (1 << (b * b)) - 1
    masks = np.arange(1, count + 1, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(b * b, dtype=np.int64)[None, :]) & 1
    return bits.reshape(count, b, b)


def time_backend(impl, mats: np.ndarray, horizon: int, repeat: int) -> dict:
    b = mats.shape[1]
    # one untimed pass absorbs compilation
    impl.norm_sequences(mats[:2], 2)
    impl.structure_flags(mats[:2])
    impl.diag_bounded_by_one(mats[:2], 2)
    impl.first_diag_ge2(mats[:2], 2)
    results = {}
    for name, call in [
        ("norm_sequences", lambda: impl.norm_sequences(mats, horizon)),
        ("structure_flags", lambda: impl.structure_flags(mats)),
        ("diag_bounded_by_one", lambda: impl.diag_bounded_by_one(mats, 2 * b * b)),
        ("first_diag_ge2", lambda: impl.first_diag_ge2(mats, 2 * b * b)),
    ]:
        best = min(_timed(call) for _ in range(repeat))
        results[name] = best
    return results


def _timed(call) -> float:
    t0 = time.perf_counter()
    call()
    return time.perf_counter() - t0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--b", type=int, default=4, choices=(2, 3, 4))
    parser.add_argument("--horizon", type=int, default=12)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    mats = population(args.b)
    print(f"population: {mats.shape[0]} matrices of side {args.b}, "
          f"horizon {args.horizon}, best of {args.repeat}\n")

    numpy_times = time_backend(_kernels_numpy, mats, args.horizon, args.repeat)
    numba_times = None
    if _kernels_numba is not None:
        numba_times = time_backend(_kernels_numba, mats, args.horizon, args.repeat)
    else:
        print("numba backend unavailable; timing numpy only\n")

    header = f"{'kernel':<22}{'numpy':>10}"
    if numba_times:
        header += f"{'numba':>10}{'speedup':>10}"
    print(header)
    for name, np_t in numpy_times.items():
        line = f"{name:<22}{np_t * 1e3:>8.1f}ms"
        if numba_times:
            nb_t = numba_times[name]
            line += f"{nb_t * 1e3:>8.1f}ms{np_t / nb_t:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
