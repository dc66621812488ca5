"""Correlated kurtosis and fault-period utilities.

Correlated kurtosis (CK) scores how strongly a waveform repeats impulsive
content at a candidate period: the squared product of period-lagged copies,
summed over the record and normalized by total energy. It is the fitness
criterion the band optimizer maximizes.
"""

from dataclasses import dataclass

import numpy as np

from ._kernels import ck_ratio
from .errors import DegenerateInputError, InvalidInputError
from .signal_core import ComplexSeries


@dataclass(frozen=True)
class CkSpec:
    """Shift order and fault period (in samples) for a CK evaluation.

    ``period_samples`` is stored fractional and rounded to the nearest
    integer lag at evaluation time; sub-sample precision comes from
    :func:`refine_period` instead of resampling.
    """

    shift_order: int = 1
    period_samples: float = 2.0

    def __post_init__(self):
        if int(self.shift_order) != self.shift_order or self.shift_order < 1:
            raise InvalidInputError("shift_order must be an integer >= 1")
        if not self.period_samples >= 2:
            raise InvalidInputError("period_samples must be at least 2")
        object.__setattr__(self, "shift_order", int(self.shift_order))
        object.__setattr__(self, "period_samples", float(self.period_samples))

    @property
    def period_lag(self) -> int:
        """Integer lag actually used in the product terms."""
        return int(round(self.period_samples))


def period_samples(fs_hz: float, fault_period_s: float) -> float:
    """Number of sampling points per fault period (sample rate times period)."""
    if not fs_hz > 0 or not fault_period_s > 0:
        raise InvalidInputError("sample rate and fault period must be positive")
    return float(fs_hz) * float(fault_period_s)


def correlated_kurtosis(y, spec: CkSpec) -> float:
    """Correlated kurtosis of a real sequence at the given period and order.

    With period lag T and shift order M:

        CK = sum_n (y[n] * y[n-T] * ... * y[n-M*T])^2 / (sum_n y[n]^2)^(M+1)

    Samples before the record start count as zero, so products reaching
    past the beginning drop out. Scale-invariant and non-negative.

    Raises
    ------
    InvalidInputError
        If the record is too short for ``shift_order * period`` lags.
    DegenerateInputError
        If the sequence has zero energy.
    """
    y = np.ascontiguousarray(y, dtype=np.float64)
    if y.ndim != 1:
        raise InvalidInputError("sequence must be one-dimensional")
    lag = spec.period_lag
    if spec.shift_order * lag >= y.size:
        raise InvalidInputError(
            f"record of {y.size} samples is too short for shift order "
            f"{spec.shift_order} at a {lag}-sample period"
        )
    if not np.any(y):
        raise DegenerateInputError("correlated kurtosis undefined for zero-energy input")
    return ck_ratio(y, lag, spec.shift_order)


def refine_period(
    filtered: ComplexSeries, t_s_estimate: float, search_frac: float = 0.05
) -> float:
    """Refine a fault-period estimate from the filtered signal's envelope.

    Computes the autocorrelation of the mean-removed squared envelope and
    returns the sub-sample (parabolically interpolated) lag of its highest
    peak within ``t_s_estimate * (1 +/- search_frac)``. The estimate is
    returned unchanged when the window holds no interior peak, or when the
    best peak is indistinguishable from noise (normalized autocorrelation
    below ``4 / sqrt(len)``).
    """
    if not 0 < search_frac <= 0.1:
        raise InvalidInputError("search_frac must be in (0, 0.1]")
    n = len(filtered)
    if not t_s_estimate * (1 + search_frac) < n / 3:
        raise InvalidInputError("search window must stay below a third of the record")

    env_sq = np.abs(filtered.values) ** 2
    env_sq -= env_sq.mean()
    spectrum = np.fft.rfft(env_sq, 2 * n)
    autocorr = np.fft.irfft(spectrum * np.conj(spectrum))[:n]

    lo = max(1, int(np.ceil(t_s_estimate * (1 - search_frac))))
    hi = min(n - 2, int(np.floor(t_s_estimate * (1 + search_frac))))
    if hi < lo:
        raise InvalidInputError("search window is empty after rounding")

    window = autocorr[lo : hi + 1]
    k = lo + int(np.argmax(window))
    interior = lo < k < hi
    significant = autocorr[0] > 0 and autocorr[k] / autocorr[0] >= 4.0 / np.sqrt(n)
    if not (interior and significant):
        return float(t_s_estimate)

    left, mid, right = autocorr[k - 1], autocorr[k], autocorr[k + 1]
    denom = left - 2.0 * mid + right
    shift = 0.0 if denom == 0 else 0.5 * (left - right) / denom
    shift = float(np.clip(shift, -0.5, 0.5))
    return float(k + shift)
