"""Tests for the fast-kurtogram baseline."""

import numpy as np
import pytest

from faultband.errors import ConfigurationError, DegenerateInputError, InvalidInputError
from faultband.kurtogram import (
    band_filter,
    fast_kurtogram,
    level_band_edges,
    level_sequence,
)
from faultband.signal_core import Signal
from faultband.synth import preset, synth_fault_signal


class TestBandLayout:
    def test_level_sequence_interleaves_thirds(self):
        assert level_sequence(3) == [0.0, 1.0, 1.6, 2.0, 2.6, 3.0]

    def test_integer_levels_tile_nyquist_in_halves(self):
        edges = level_band_edges(19200.0, 3)
        assert edges.shape == (9,)
        assert edges[0] == 0.0 and edges[-1] == 9600.0
        assert np.diff(edges) == pytest.approx(19200.0 / 2**4)

    def test_third_levels_tile_nyquist_in_thirds(self):
        edges = level_band_edges(19200.0, 2.6)
        assert edges.shape == (7,)
        assert np.diff(edges) == pytest.approx(19200.0 / (3 * 2**2))


def tone_signal(freq_hz, fs=8192.0, n=8192):
    t = np.arange(n) / fs
    return Signal(np.cos(2.0 * np.pi * freq_hz * t), fs)


class TestFastKurtogram:
    def test_pure_tone_band_contains_tone(self):
        result = fast_kurtogram(tone_signal(1000.0), max_level=4)
        lo = result.best_center_hz - result.best_bandwidth_hz / 2.0
        hi = result.best_center_hz + result.best_bandwidth_hz / 2.0
        assert lo <= 1000.0 <= hi

    def test_best_fields_match_map_argmax(self):
        signal, _ = synth_fault_signal(preset("conveyor-bearing"), seed=0)
        result = fast_kurtogram(signal)
        peak = max(np.nanmax(row) for _, row in result.levels if np.any(np.isfinite(row)))
        assert result.best_kurtosis == peak
        assert len(result.levels) == len(level_sequence(7))

    def test_bearing_preset_best_band_contains_resonance(self):
        for seed in (0, 1):
            signal, truth = synth_fault_signal(preset("conveyor-bearing"), seed)
            result = fast_kurtogram(signal)
            lo = result.best_center_hz - result.best_bandwidth_hz / 2.0
            hi = result.best_center_hz + result.best_bandwidth_hz / 2.0
            assert lo <= truth["resonance_hz"] <= hi

    def test_white_noise_stays_near_gaussian_baseline(self):
        # squared envelope of a Gaussian band is exponential: kurtosis 9
        calm = 0
        for seed in range(10):
            noise = np.random.default_rng(seed).standard_normal(2**17)
            result = fast_kurtogram(Signal(noise, 16384.0), max_level=3)
            values = np.concatenate([row for _, row in result.levels])
            assert np.nanmedian(values) == pytest.approx(9.0, abs=2.0)
            if np.nanmax(values) <= 13.5:
                calm += 1
        assert calm >= 9

    def test_zero_signal_is_degenerate(self):
        with pytest.raises(DegenerateInputError):
            fast_kurtogram(Signal(np.zeros(4096), 8192.0), max_level=3)

    def test_preconditions(self):
        with pytest.raises(ConfigurationError):
            fast_kurtogram(tone_signal(1000.0), max_level=1)
        with pytest.raises(InvalidInputError):
            fast_kurtogram(Signal(np.ones(64), 8192.0), max_level=7)


class TestBandFilter:
    def test_tone_inside_band_passes_at_unit_ratio(self):
        out = band_filter(tone_signal(1000.0), 1024.0, 512.0)
        assert np.mean(out.envelope) == pytest.approx(1.0, rel=1e-9)

    def test_tone_outside_band_is_rejected(self):
        out = band_filter(tone_signal(2000.0), 1024.0, 512.0)
        assert np.max(out.envelope) <= 1e-6

    def test_zero_signal_stays_zero(self):
        out = band_filter(Signal(np.zeros(4096), 8192.0), 1024.0, 512.0)
        assert np.all(out.values == 0.0)

    def test_rejects_band_outside_nyquist(self):
        with pytest.raises(ConfigurationError):
            band_filter(tone_signal(1000.0), 4000.0, 500.0)
        with pytest.raises(ConfigurationError):
            band_filter(tone_signal(1000.0), 100.0, 500.0)
