"""Hot numeric kernels with an optional numba-compiled fast path.

The correlated-kurtosis kernel sits in the innermost loop of the band
optimization (one call per fitness evaluation), so it ships in two
equivalent implementations:

* a numba ``@njit`` version, used by default when numba imports cleanly;
* a vectorized pure-numpy fallback.

Set ``FAULTBAND_DISABLE_NUMBA=1`` in the environment (before import) to
force the numpy path. ``benchmarks/bench_ck.py`` times the two against
each other.
"""

import os

import numpy as np

_DISABLE_FLAG = "FAULTBAND_DISABLE_NUMBA"


def _ck_ratio_numpy(y: np.ndarray, period: int, order: int) -> float:
    n = y.size
    start = order * period
    prod = y[start:].copy()
    for m in range(1, order + 1):
        prod *= y[start - m * period : n - m * period]
    energy = float(np.dot(y, y))
    return float(np.dot(prod, prod) / energy ** (order + 1))


def _ck_ratio_loops(y, period, order):
    # Samples before the record start count as zero, so the first
    # order*period terms of the numerator vanish and the sum starts there.
    n = y.shape[0]
    num = 0.0
    for i in range(order * period, n):
        p = y[i]
        for m in range(1, order + 1):
            p *= y[i - m * period]
        num += p * p
    energy = 0.0
    for i in range(n):
        energy += y[i] * y[i]
    return num / energy ** (order + 1)


def _numba_enabled() -> bool:
    return os.environ.get(_DISABLE_FLAG, "").strip() not in ("1", "true", "yes")


if _numba_enabled():
    try:
        from numba import njit

        _ck_ratio_jit = njit(cache=True)(_ck_ratio_loops)
        CK_BACKEND = "numba"
    except ImportError:
        _ck_ratio_jit = None
        CK_BACKEND = "numpy"
else:
    _ck_ratio_jit = None
    CK_BACKEND = "numpy"


def ck_ratio(y: np.ndarray, period: int, order: int) -> float:
    """Raw correlated-kurtosis ratio on a float64 array (no validation)."""
    if _ck_ratio_jit is not None:
        return float(_ck_ratio_jit(y, period, order))
    return _ck_ratio_numpy(y, period, order)
