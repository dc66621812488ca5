"""Core signal types, envelope extraction, and scalar health metrics.

Everything here is pure: the same input always produces the same output,
and nothing mutates its arguments, so all functions are safe to call from
concurrent workers.
"""

from dataclasses import dataclass

import numpy as np
from scipy.signal import hilbert

from .errors import DegenerateInputError, InvalidInputError

#: Records shorter than this carry too little context for envelope analysis.
MIN_SIGNAL_LENGTH = 16


@dataclass(frozen=True)
class Signal:
    """Uniformly sampled real-valued vibration record.

    Parameters
    ----------
    samples : array_like
        Real amplitude sequence, arbitrary physical units.
    sample_rate_hz : float
        Sampling frequency, must be positive.
    """

    samples: np.ndarray
    sample_rate_hz: float

    def __post_init__(self):
        samples = np.ascontiguousarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise InvalidInputError("signal must be one-dimensional")
        if samples.size < MIN_SIGNAL_LENGTH:
            raise InvalidInputError(
                f"signal has {samples.size} samples, need at least {MIN_SIGNAL_LENGTH}"
            )
        if not np.all(np.isfinite(samples)):
            raise InvalidInputError("signal contains non-finite samples")
        if not self.sample_rate_hz > 0:
            raise InvalidInputError("sample_rate_hz must be positive")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate_hz", float(self.sample_rate_hz))

    def __len__(self):
        return self.samples.size

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate_hz


@dataclass(frozen=True)
class ComplexSeries:
    """Complex-valued series at a fixed sample rate (analytic/filtered signals)."""

    values: np.ndarray
    sample_rate_hz: float

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.complex128)
        if values.ndim != 1:
            raise InvalidInputError("series must be one-dimensional")
        if values.size < MIN_SIGNAL_LENGTH:
            raise InvalidInputError(
                f"series has {values.size} samples, need at least {MIN_SIGNAL_LENGTH}"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidInputError("series contains non-finite values")
        if not self.sample_rate_hz > 0:
            raise InvalidInputError("sample_rate_hz must be positive")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "sample_rate_hz", float(self.sample_rate_hz))

    def __len__(self):
        return self.values.size

    @property
    def envelope(self) -> np.ndarray:
        """Instantaneous envelope (modulus)."""
        return np.abs(self.values)


@dataclass(frozen=True)
class EnvelopeSpectrum:
    """One-sided spectrum of a squared envelope.

    ``frequencies_hz`` is uniformly spaced starting at 0 with step
    ``resolution_hz``; ``magnitudes`` holds the matching non-negative
    amplitudes.
    """

    frequencies_hz: np.ndarray
    magnitudes: np.ndarray
    resolution_hz: float

    def __post_init__(self):
        freqs = np.ascontiguousarray(self.frequencies_hz, dtype=np.float64)
        mags = np.ascontiguousarray(self.magnitudes, dtype=np.float64)
        if freqs.ndim != 1 or mags.ndim != 1 or freqs.size != mags.size:
            raise InvalidInputError("frequency and magnitude arrays must match")
        if freqs.size < 2:
            raise InvalidInputError("spectrum needs at least two bins")
        if freqs[0] != 0.0:
            raise InvalidInputError("frequency axis must start at 0")
        if not self.resolution_hz > 0:
            raise InvalidInputError("resolution_hz must be positive")
        if not np.allclose(np.diff(freqs), self.resolution_hz, rtol=1e-9, atol=1e-12):
            raise InvalidInputError("frequency axis must be uniformly spaced")
        if not np.all(np.isfinite(mags)) or np.any(mags < 0):
            raise InvalidInputError("magnitudes must be finite and non-negative")
        object.__setattr__(self, "frequencies_hz", freqs)
        object.__setattr__(self, "magnitudes", mags)
        object.__setattr__(self, "resolution_hz", float(self.resolution_hz))

    @property
    def max_frequency_hz(self) -> float:
        return float(self.frequencies_hz[-1])


def analytic_signal(s: Signal) -> ComplexSeries:
    """One-sided-spectrum (analytic) extension of a real signal.

    The real part reproduces the input and the modulus is the instantaneous
    envelope. Computed by zeroing the negative-frequency half of the DFT and
    doubling the strictly positive half (DC and Nyquist stay unscaled).
    """
    return ComplexSeries(hilbert(s.samples), s.sample_rate_hz)


def squared_envelope_spectrum(series: ComplexSeries) -> EnvelopeSpectrum:
    """One-sided amplitude spectrum of the mean-removed squared envelope.

    Magnitudes are scaled by 2/N so a unit-amplitude modulation tone in the
    squared envelope reads as 1.0 at its bin. The DC bin survives only as the
    (zero) residue of mean removal; peak searches should skip it.
    """
    env_sq = np.abs(series.values) ** 2
    env_sq -= env_sq.mean()
    n = env_sq.size
    mags = (2.0 / n) * np.abs(np.fft.rfft(env_sq))
    freqs = np.fft.rfftfreq(n, d=1.0 / series.sample_rate_hz)
    return EnvelopeSpectrum(freqs, mags, series.sample_rate_hz / n)


def _kurtosis_array(x: np.ndarray) -> float:
    """Non-excess sample kurtosis E[(x-mu)^4] / E[(x-mu)^2]^2 of a 1-D array."""
    x = np.asarray(x, dtype=np.float64)
    if x.size < 4:
        raise InvalidInputError("kurtosis needs at least 4 samples")
    dev = x - x.mean()
    var = np.mean(dev * dev)
    # Relative floor: rounding noise on a constant record must not pass as variance.
    if var <= (1e-12 * max(1.0, float(np.max(np.abs(x))))) ** 2:
        raise DegenerateInputError("kurtosis undefined for zero-variance input")
    return float(np.mean(dev**4) / var**2)


def kurtosis(s: Signal) -> float:
    """Non-excess kurtosis of the record (3.0 for Gaussian noise).

    Raises
    ------
    DegenerateInputError
        If the signal has zero variance.
    """
    return _kurtosis_array(s.samples)


def _harmonic_masks(
    ses: EnvelopeSpectrum, fault_freq_hz: float, n_harmonics: int, band_tol_hz: float
):
    """Boolean masks (harmonic windows, full evaluation band) over SES bins."""
    if n_harmonics < 1:
        raise InvalidInputError("n_harmonics must be at least 1")
    if not fault_freq_hz > ses.resolution_hz:
        raise InvalidInputError("fault frequency must exceed the spectrum resolution")
    if band_tol_hz is None:
        band_tol_hz = 1.5 * ses.resolution_hz
    top = n_harmonics * fault_freq_hz + band_tol_hz
    if top > ses.max_frequency_hz:
        raise InvalidInputError(
            f"harmonic window up to {top:.3f} Hz exceeds the spectrum's "
            f"{ses.max_frequency_hz:.3f} Hz limit"
        )
    freqs = ses.frequencies_hz
    in_windows = np.zeros(freqs.size, dtype=bool)
    for k in range(1, n_harmonics + 1):
        in_windows |= np.abs(freqs - k * fault_freq_hz) <= band_tol_hz
    band = (freqs > 0) & (freqs <= top)
    in_windows &= band
    return in_windows, band


def envsi(
    ses: EnvelopeSpectrum,
    fault_freq_hz: float,
    n_harmonics: int = 10,
    band_tol_hz: float | None = None,
) -> float:
    """Fraction of squared SES energy concentrated at fault-frequency harmonics.

    Sums squared magnitudes inside +/- ``band_tol_hz`` windows around the first
    ``n_harmonics`` multiples of ``fault_freq_hz`` and divides by the squared
    energy of the whole band up to the last window (DC excluded). Returns a
    value in [0, 1]; higher means the envelope spectrum is dominated by the
    fault signature. ``band_tol_hz`` defaults to 1.5 bins.
    """
    in_windows, band = _harmonic_masks(ses, fault_freq_hz, n_harmonics, band_tol_hz)
    sq = ses.magnitudes**2
    total = float(np.sum(sq[band]))
    if total == 0.0:
        return 0.0
    return float(np.sum(sq[in_windows]) / total)


def harmonic_snr(
    ses: EnvelopeSpectrum,
    fault_freq_hz: float,
    n_harmonics: int = 10,
    band_tol_hz: float | None = None,
) -> float:
    """Harmonic-window energy over remaining in-band energy, in dB.

    Windows are identical to :func:`envsi`. Returns ``math.inf`` when all
    in-band energy sits inside the harmonic windows.
    """
    in_windows, band = _harmonic_masks(ses, fault_freq_hz, n_harmonics, band_tol_hz)
    sq = ses.magnitudes**2
    inside = float(np.sum(sq[in_windows]))
    outside = float(np.sum(sq[band & ~in_windows]))
    if outside == 0.0:
        return float("inf")
    if inside == 0.0:
        return float("-inf")
    return float(10.0 * np.log10(inside / outside))
