"""Synthetic vibration records with known ground truth.

A faulty rolling element hits its raceway once per revolution fraction,
and every hit rings the machine's structural resonance. The generator
reproduces that texture: a jittered impulse train convolved with an
exponentially decaying sinusoid, buried under interference tones and
broadband noise at a requested SNR.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve

from .errors import ConfigurationError
from .signal_core import Signal


@dataclass(frozen=True)
class FaultSignalSpec:
    """Recipe for one synthetic fault record.

    ``resonance_freq_hz`` is the damped ring-down frequency (the spectral
    peak); ``damping_ratio`` sets how fast each ring decays. ``noise_snr_db``
    is the impact-train power over the white-noise power, in dB;
    interference tones are excluded from both sides of that ratio. Each
    impact's timing is perturbed by up to ``jitter_frac`` of a period.
    """

    sample_rate_hz: float
    duration_s: float
    fault_freq_hz: float
    resonance_freq_hz: float
    damping_ratio: float = 0.04
    impulse_amplitude: float = 1.0
    noise_snr_db: float = 10.0
    jitter_frac: float = 0.0
    interference_tones: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not self.sample_rate_hz > 0 or not self.duration_s > 0:
            raise ConfigurationError("sample rate and duration must be positive")
        if not self.fault_freq_hz > 0 or not self.resonance_freq_hz > 0:
            raise ConfigurationError("fault and resonance frequencies must be positive")
        if not 0 < self.damping_ratio < 1:
            raise ConfigurationError("damping_ratio must lie in (0, 1)")
        if not self.impulse_amplitude >= 0 or not np.isfinite(self.noise_snr_db):
            raise ConfigurationError("impulse_amplitude and noise_snr_db must be usable")
        if not 0 <= self.jitter_frac < 0.05:
            raise ConfigurationError("jitter_frac must lie in [0, 0.05)")
        zeta = self.damping_ratio
        band_top = self.resonance_freq_hz * (1.0 + zeta / np.sqrt(1.0 - zeta**2))
        if band_top > self.sample_rate_hz / 2.0:
            raise ConfigurationError(
                "resonance and its half-power band must fit below Nyquist"
            )
        if not self.fault_freq_hz < self.resonance_freq_hz / 5.0:
            raise ConfigurationError("fault frequency must sit well below the resonance")
        if self.duration_s * self.fault_freq_hz < 10.0:
            raise ConfigurationError("record must span at least 10 impacts")
        tones = tuple((float(f), float(a)) for f, a in self.interference_tones)
        for freq, amp in tones:
            if not 0 < freq < self.sample_rate_hz / 2.0 or not amp >= 0:
                raise ConfigurationError(f"interference tone ({freq}, {amp}) is unusable")
        object.__setattr__(self, "interference_tones", tones)

    @property
    def n_samples(self) -> int:
        return int(round(self.duration_s * self.sample_rate_hz))

    @property
    def period_samples(self) -> float:
        """Exact pre-jitter impact spacing in samples."""
        return self.sample_rate_hz / self.fault_freq_hz


def _ring_kernel(spec: FaultSignalSpec) -> np.ndarray:
    """Decaying sinusoid each impact is convolved with, truncated at e^-10."""
    zeta = spec.damping_ratio
    decay = 2.0 * np.pi * spec.resonance_freq_hz * zeta / np.sqrt(1.0 - zeta**2)
    length = min(spec.n_samples, int(np.ceil(10.0 * spec.sample_rate_hz / decay)))
    t = np.arange(length) / spec.sample_rate_hz
    return np.exp(-decay * t) * np.sin(2.0 * np.pi * spec.resonance_freq_hz * t)


def _components(spec: FaultSignalSpec, seed: int):
    """Impact train, interference tones, and scaled noise, pre-mix.

    Split out so tests can measure the realized SNR on the actual parts.
    Draw order (jitter, tone phases, noise) is fixed for reproducibility.
    """
    rng = np.random.default_rng(seed)
    n = spec.n_samples
    period = spec.period_samples

    n_impacts = int(np.floor((n - 1) / period)) + 1
    jitter = rng.uniform(-spec.jitter_frac, spec.jitter_frac, n_impacts)
    positions = (np.arange(n_impacts) + jitter) * period

    impulses = np.zeros(n + 1)
    for pos in positions:
        if pos < 0 or pos >= n - 1:
            continue
        idx = int(pos)
        frac = pos - idx
        # split across neighbors to keep sub-sample impact timing
        impulses[idx] += spec.impulse_amplitude * (1.0 - frac)
        impulses[idx + 1] += spec.impulse_amplitude * frac
    train = fftconvolve(impulses[:n], _ring_kernel(spec))[:n]

    t = np.arange(n) / spec.sample_rate_hz
    phases = rng.uniform(0.0, 2.0 * np.pi, len(spec.interference_tones))
    tones = np.zeros(n)
    for (freq, amp), phase in zip(spec.interference_tones, phases):
        tones += amp * np.sin(2.0 * np.pi * freq * t + phase)

    train_power = float(np.mean(train**2))
    if train_power > 0.0:
        scale = np.sqrt(train_power / 10.0 ** (spec.noise_snr_db / 10.0))
    else:
        scale = 1.0  # no impacts: emit unit-variance noise, SNR is moot
    noise = scale * rng.standard_normal(n)
    return train, tones, noise


def synth_fault_signal(spec: FaultSignalSpec, seed: int):
    """Generate one record; returns the signal and its ground truth.

    Truth carries ``period_samples`` (exact pre-jitter spacing) and
    ``resonance_hz``. Same spec and seed always give the same samples.
    """
    train, tones, noise = _components(spec, seed)
    signal = Signal(train + tones + noise, spec.sample_rate_hz)
    truth = {
        "period_samples": spec.period_samples,
        "resonance_hz": spec.resonance_freq_hz,
    }
    return signal, truth


#: Ready-made specs mirroring the two field scenarios used in the tests.
PRESETS = {
    "conveyor-bearing": FaultSignalSpec(
        sample_rate_hz=19200.0,
        duration_s=2.0,
        fault_freq_hz=12.6,
        resonance_freq_hz=3000.0,
        damping_ratio=0.04,
        impulse_amplitude=1.0,
        noise_snr_db=-8.0,
        jitter_frac=0.005,
        # 450/458 Hz pair beats at 8 Hz inside the envelope band, swamping
        # the raw SES the way real cross-machine interference does
        interference_tones=((450.0, 0.45), (458.0, 0.45), (1100.0, 0.2)),
    ),
    "conveyor-gearbox": FaultSignalSpec(
        sample_rate_hz=8192.0,
        duration_s=2.5,
        fault_freq_hz=4.1,
        resonance_freq_hz=2000.0,
        damping_ratio=0.05,
        impulse_amplitude=1.0,
        noise_snr_db=-6.0,
        jitter_frac=0.005,
        # 320/326 Hz pair beats at 6 Hz, off the 4.1 Hz harmonic comb
        interference_tones=((320.0, 0.4), (326.0, 0.4), (650.0, 0.25)),
    ),
}


def preset(name: str) -> FaultSignalSpec:
    """Look up a named preset spec."""
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ConfigurationError(f"unknown preset {name!r}; choose from: {known}") from None
