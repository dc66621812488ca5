"""End-to-end fault diagnosis: optimized band filtering plus SES reporting.

The flow: start from a nominal fault frequency, let the crayfish optimizer
pick the Morlet center frequency and bandwidth that maximize the correlated
kurtosis of the filtered waveform, optionally refine the fault period from
the winning band's envelope as the search runs, then report the squared
envelope spectrum, harmonic table, and before/after health metrics.
"""

from dataclasses import dataclass

import numpy as np

from .cktools import CkSpec, correlated_kurtosis, refine_period
from .coa import CoaConfig, optimize
from .errors import ConfigurationError
from .morlet import MorletParams, filter_gain_spectrum
from .signal_core import (
    ComplexSeries,
    EnvelopeSpectrum,
    Signal,
    _kurtosis_array,
    analytic_signal,
    envsi,
    squared_envelope_spectrum,
)


@dataclass(frozen=True)
class PipelineConfig:
    """Diagnosis settings.

    ``fc_bounds_hz`` and ``sigma_bounds_hz`` box the filter search; leave
    them ``None`` to derive sample-rate defaults (center in [fs/50,
    0.45 fs], bandwidth in [fs/200, fs/8]) when the signal is seen.
    ``initial_fault_freq_hz`` seeds the fault period; with
    ``refine_period`` on, the period is re-estimated from the best
    candidate's envelope once per optimizer iteration.
    """

    initial_fault_freq_hz: float
    fc_bounds_hz: tuple | None = None
    sigma_bounds_hz: tuple | None = None
    shift_order: int = 1
    refine_period: bool = True
    refine_search_frac: float = 0.05
    envsi_harmonics: int = 10
    population_size: int = 16
    max_iterations: int = 40
    rng_seed: int = 0

    def __post_init__(self):
        if not self.initial_fault_freq_hz > 0:
            raise ConfigurationError("initial_fault_freq_hz must be positive")
        if self.shift_order < 1:
            raise ConfigurationError("shift_order must be at least 1")
        if not 0 < self.refine_search_frac <= 0.1:
            raise ConfigurationError("refine_search_frac must be in (0, 0.1]")
        if self.envsi_harmonics < 1:
            raise ConfigurationError("envsi_harmonics must be at least 1")
        for bounds, name in (
            (self.fc_bounds_hz, "fc_bounds_hz"),
            (self.sigma_bounds_hz, "sigma_bounds_hz"),
        ):
            if bounds is not None:
                lo, hi = bounds
                if not 0 < lo < hi:
                    raise ConfigurationError(f"{name} must satisfy 0 < low < high")


@dataclass(frozen=True)
class DiagnosisReport:
    """Everything the diagnosis produced.

    ``ck_history`` is the best correlated kurtosis per optimizer
    iteration; it never decreases except at iterations where the fault
    period was re-estimated (scores under different periods are not
    comparable). ``harmonics`` holds (order, frequency, magnitude) rows
    sorted by order.
    """

    optimal_params: MorletParams
    fault_freq_hz: float
    final_period_samples: float
    best_ck: float
    ck_history: np.ndarray
    kurtosis_raw: float
    kurtosis_processed: float
    envsi_raw: float
    envsi_processed: float
    ses: EnvelopeSpectrum
    harmonics: tuple


def detect_harmonics(
    ses: EnvelopeSpectrum,
    fault_freq_hz: float,
    max_order: int = 10,
    window_hz: float | None = None,
    threshold_ratio: float = 3.0,
):
    """Pick out fault-frequency harmonics that stand clear of the floor.

    For each order k up to ``max_order``, the strongest bin within
    ``window_hz`` of k times the fault frequency is reported if it exceeds
    ``threshold_ratio`` times the median spectrum magnitude. Returns
    (order, freq_hz, magnitude) tuples sorted by order.
    """
    if not threshold_ratio > 1.0:
        raise ConfigurationError("threshold_ratio must exceed 1")
    if max_order < 1:
        raise ConfigurationError("max_order must be at least 1")
    if not fault_freq_hz > ses.resolution_hz:
        raise ConfigurationError("fault frequency must exceed the spectrum resolution")
    if window_hz is None:
        window_hz = 1.5 * ses.resolution_hz
    if max_order * fault_freq_hz + window_hz > ses.max_frequency_hz:
        raise ConfigurationError("harmonic windows extend beyond the spectrum")

    floor = float(np.median(ses.magnitudes))
    freqs = ses.frequencies_hz
    found = []
    for order in range(1, max_order + 1):
        mask = (np.abs(freqs - order * fault_freq_hz) <= window_hz) & (freqs > 0)
        if not np.any(mask):
            continue
        idx = np.flatnonzero(mask)
        best = idx[np.argmax(ses.magnitudes[idx])]
        if ses.magnitudes[best] > threshold_ratio * floor:
            found.append((order, float(freqs[best]), float(ses.magnitudes[best])))
    return found


def _resolve_bounds(cfg: PipelineConfig, fs_hz: float):
    fc = cfg.fc_bounds_hz or (fs_hz / 50.0, 0.45 * fs_hz)
    sigma = cfg.sigma_bounds_hz or (fs_hz / 200.0, fs_hz / 8.0)
    if fc[1] >= fs_hz / 2.0:
        raise ConfigurationError("center-frequency bounds must stay below Nyquist")
    # at least one (center, narrowest bandwidth) pair must fit under Nyquist
    lo = max(fc[0], sigma[0] / 2.0)
    hi = min(fc[1], fs_hz / 2.0 - sigma[0] / 2.0)
    if lo > hi:
        raise ConfigurationError(
            "no center frequency in bounds admits an in-Nyquist pass band"
        )
    return fc, sigma


def diagnose(s: Signal, cfg: PipelineConfig) -> DiagnosisReport:
    """Run the full diagnosis on one record.

    Raises
    ------
    ConfigurationError
        If the search bounds admit no valid filter, the record holds
        fewer than two fault periods, or it is too short to refine.
    """
    fs = s.sample_rate_hz
    n = len(s)
    fc_bounds, sigma_bounds = _resolve_bounds(cfg, fs)
    if not cfg.initial_fault_freq_hz > 2.0 / s.duration_s:
        raise ConfigurationError("record must span at least two fault periods")

    period = fs / cfg.initial_fault_freq_hz
    if cfg.shift_order * round(period * 1.1) >= n:
        raise ConfigurationError(
            "record too short for the shift order at this fault frequency"
        )
    if cfg.refine_period and not period * (1.0 + cfg.refine_search_frac) < n / 3.0:
        raise ConfigurationError("record too short to refine the fault period")

    spectrum = np.fft.fft(s.samples)
    grid_hz = np.fft.fftfreq(n, d=1.0 / fs)
    state = {"period": period}

    def apply_filter(params: MorletParams) -> np.ndarray:
        return np.fft.ifft(spectrum * filter_gain_spectrum(params, grid_hz))

    def fitness(x: np.ndarray) -> float:
        params = MorletParams(float(x[0]), float(x[1]))
        if not params.band_fits(fs):
            return float("-inf")
        filtered = apply_filter(params)
        spec = CkSpec(cfg.shift_order, state["period"])
        return correlated_kurtosis(filtered.real, spec)

    hook = None
    if cfg.refine_period:

        def hook(best: np.ndarray):
            params = MorletParams(float(best[0]), float(best[1]))
            if not params.band_fits(fs):
                return None
            filtered = apply_filter(params)
            series = ComplexSeries(filtered, fs)
            old = state["period"]
            if not old * (1.0 + cfg.refine_search_frac) < n / 3.0:
                return None
            new = refine_period(series, old, cfg.refine_search_frac)
            if new == old:
                return None
            state["period"] = new
            # the stored best CK was scored under the old period; rescore it
            return correlated_kurtosis(
                filtered.real, CkSpec(cfg.shift_order, new)
            )

    coa_config = CoaConfig(
        lower_bounds=np.array([fc_bounds[0], sigma_bounds[0]]),
        upper_bounds=np.array([fc_bounds[1], sigma_bounds[1]]),
        population_size=cfg.population_size,
        max_iterations=cfg.max_iterations,
        rng_seed=cfg.rng_seed,
    )
    result = optimize(fitness, coa_config, per_iteration_hook=hook)

    params = MorletParams(float(result.best_position[0]), float(result.best_position[1]))
    filtered = ComplexSeries(apply_filter(params), fs)
    final_period = state["period"]
    fault_freq = fs / final_period

    ses = squared_envelope_spectrum(filtered)
    ses_raw = squared_envelope_spectrum(analytic_signal(s))
    return DiagnosisReport(
        optimal_params=params,
        fault_freq_hz=fault_freq,
        final_period_samples=final_period,
        best_ck=result.best_fitness,
        ck_history=result.fitness_history,
        kurtosis_raw=_kurtosis_array(s.samples),
        kurtosis_processed=_kurtosis_array(filtered.values.real),
        envsi_raw=envsi(ses_raw, fault_freq, cfg.envsi_harmonics),
        envsi_processed=envsi(ses, fault_freq, cfg.envsi_harmonics),
        ses=ses,
        harmonics=tuple(detect_harmonics(ses, fault_freq, cfg.envsi_harmonics)),
    )
