"""Timing comparison for the correlated-kurtosis kernels.

Runs the compiled and the pure-numpy kernel over a grid of record sizes
and shift orders, printing the median per-call time of each and the
speedup. The compiled path warms up once before timing so compilation
cost is not counted. Use FAULTBAND_DISABLE_NUMBA=1 to confirm the
package still works when only the numpy path is available.
"""

import argparse
import time

import numpy as np

from faultband import _kernels


def median_time(func, args, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        func(*args)
        times.append(time.perf_counter() - start)
    return float(np.median(times))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes", type=int, nargs="+", default=[4096, 16384, 65536, 262144]
    )
    parser.add_argument("--orders", type=int, nargs="+", default=[1, 2, 3])
    parser.add_argument("--repeats", type=int, default=21)
    parser.add_argument("--lag", type=int, default=160)
    args = parser.parse_args()

    kernels = [("numpy", _kernels._ck_ratio_numpy)]
    if _kernels.CK_BACKEND == "numba":
        kernels.append(("numba", _kernels._ck_ratio_jit))
    else:
        print("compiled kernel unavailable (disabled or numba missing); "
              "timing the numpy path only")

    rng = np.random.default_rng(0)
    print(f"{'n':>8} {'order':>5}", end="")
    for name, _ in kernels:
        print(f" {name + ' us':>12}", end="")
    if len(kernels) == 2:
        print(f" {'speedup':>8}", end="")
    print()

    for n in args.sizes:
        envelope = np.abs(rng.standard_normal(n))
        for order in args.orders:
            if order * args.lag >= n:
                continue
            row = []
            for _, func in kernels:
                func(envelope, args.lag, order)
                row.append(median_time(func, (envelope, args.lag, order), args.repeats))
            print(f"{n:>8} {order:>5}", end="")
            for t in row:
                print(f" {t * 1e6:>12.1f}", end="")
            if len(row) == 2:
                print(f" {row[0] / row[1]:>7.2f}x", end="")
            print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
