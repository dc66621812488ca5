"""Acceptance checks for the release gate.

Each test covers one numbered criterion, prints a single PASS or FAIL
line with the measured numbers, and asserts the stated tolerance and
runtime budget. Run with ``pytest -s tests/test_acceptance.py`` to see
the lines as they print.
"""

import json
import time
from dataclasses import replace

import numpy as np

from faultband import (
    CkSpec,
    CoaConfig,
    MorletParams,
    PipelineConfig,
    Signal,
    band_filter,
    correlated_kurtosis,
    diagnose,
    envsi,
    fast_kurtogram,
    morlet_gain,
    optimize,
    preset,
    refine_period,
    squared_envelope_spectrum,
    synth_fault_signal,
    time_domain_wavelet,
    wavelet_filter,
)
from faultband.cli import main


def _report(name: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
    print(line)
    assert ok, line


def _ck_oracle(y: np.ndarray, lag: int, order: int) -> float:
    """Direct nested-loop transcription of the correlated-kurtosis sum."""
    n = len(y)
    numerator = 0.0
    for i in range(n):
        product = y[i]
        for m in range(1, order + 1):
            j = i - m * lag
            product = product * y[j] if j >= 0 else 0.0
        numerator += product * product
    denominator = float(np.sum(y * y)) ** (order + 1)
    return numerator / denominator


def test_criterion_1_ck_matches_nested_loop_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(1234)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(64, 4097))
        order = int(rng.integers(1, 4))
        lag = int(rng.integers(2, min(400, (n - 1) // order) + 1))
        y = np.abs(rng.standard_normal(n)) + 0.1
        expected = _ck_oracle(y, lag, order)
        got = correlated_kurtosis(
            y, CkSpec(shift_order=order, period_samples=float(lag))
        )
        worst = max(worst, abs(got - expected) / abs(expected))
    elapsed = time.perf_counter() - start
    _report(
        "criterion 1 (CK oracle equivalence)",
        worst <= 1e-12 and elapsed < 5.0,
        f"max relative error {worst:.3e} on 100 cases in {elapsed:.2f} s",
    )


def test_criterion_2_morlet_gain_closed_forms():
    start = time.perf_counter()
    fs, n = 8192.0, 8192
    params = MorletParams(center_freq_hz=1024.0, bandwidth_hz=128.0)
    t = np.arange(n) / fs

    def tone_ratio(freq_hz: float) -> float:
        signal = Signal(np.cos(2.0 * np.pi * freq_hz * t), fs)
        filtered = wavelet_filter(signal, params).values.real
        bin_index = int(round(freq_hz * n / fs))
        return 2.0 * np.abs(np.fft.rfft(filtered)[bin_index]) / n

    center = tone_ratio(1024.0)
    low = tone_ratio(1024.0 - 64.0)
    high = tone_ratio(1024.0 + 64.0)
    edge = np.exp(-np.pi**2 / 4.0)
    elapsed = time.perf_counter() - start
    ok = (
        abs(center - 1.0) <= 0.01
        and abs(low - edge) <= 0.02 * edge
        and abs(high - edge) <= 0.02 * edge
        and elapsed < 1.0
    )
    _report(
        "criterion 2 (Morlet closed-form gains)",
        ok,
        f"center {center:.5f} (want 1 +/- 1%), edges {low:.5f}/{high:.5f} "
        f"(want {edge:.5f} +/- 2%) in {elapsed:.2f} s",
    )


def test_criterion_3_wavelet_dft_matches_gain():
    start = time.perf_counter()
    fs, n = 1000.0, 4096
    params = MorletParams(center_freq_hz=100.0, bandwidth_hz=30.0)
    wavelet = time_domain_wavelet(params, n, fs)
    magnitudes = np.abs(np.fft.fft(wavelet.values)) / fs
    freqs = np.fft.fftfreq(n, 1.0 / fs)
    band = (freqs >= 70.0) & (freqs <= 130.0)
    expected = morlet_gain(params, freqs[band])
    worst = float(np.max(np.abs(magnitudes[band] - expected) / expected))
    elapsed = time.perf_counter() - start
    _report(
        "criterion 3 (wavelet DFT vs gain curve)",
        worst <= 1e-3 and elapsed < 1.0,
        f"max relative error {worst:.3e} over [70, 130] Hz in {elapsed:.2f} s",
    )


def test_criterion_4_optimizer_converges_on_sphere():
    start = time.perf_counter()

    def sphere(x: np.ndarray) -> float:
        return -float(np.sum(x * x))

    hits = 0
    monotone = 0
    budget_exact = 0
    finals = []
    for seed in range(10):
        config = CoaConfig(
            lower_bounds=np.array([-100.0, -100.0]),
            upper_bounds=np.array([100.0, 100.0]),
            population_size=30,
            max_iterations=200,
            rng_seed=seed,
        )
        result = optimize(sphere, config)
        finals.append(result.best_fitness)
        hits += result.best_fitness >= -1e-3
        monotone += bool(np.all(np.diff(result.fitness_history) >= 0.0))
        budget_exact += result.evaluations == 30 * 201
    elapsed = time.perf_counter() - start
    ok = hits >= 8 and monotone == 10 and budget_exact == 10 and elapsed < 10.0
    _report(
        "criterion 4 (sphere convergence)",
        ok,
        f"{hits}/10 reached -1e-3 (worst {min(finals):.2e}), monotone "
        f"{monotone}/10, exact budget {budget_exact}/10 in {elapsed:.2f} s",
    )


def test_criterion_5_bearing_surrogate_end_to_end():
    start = time.perf_counter()
    spec = preset("conveyor-bearing")
    centered = 0
    harmonic_rich = 0
    improved = 0
    for seed in range(10):
        signal, truth = synth_fault_signal(spec, seed)
        report = diagnose(
            signal, PipelineConfig(initial_fault_freq_hz=12.6, rng_seed=seed)
        )
        centered += abs(
            report.optimal_params.center_freq_hz - truth["resonance_hz"]
        ) <= 500.0
        harmonic_rich += len(report.harmonics) >= 3
        improved += report.envsi_processed >= 1.5 * report.envsi_raw
    elapsed = time.perf_counter() - start
    ok = centered >= 8 and harmonic_rich >= 8 and improved >= 8 and elapsed < 60.0
    _report(
        "criterion 5 (bearing surrogate)",
        ok,
        f"center within 500 Hz {centered}/10, >=3 harmonics {harmonic_rich}/10, "
        f"envsi gain >=1.5x {improved}/10 in {elapsed:.1f} s",
    )


def test_criterion_6_gearbox_surrogate_end_to_end():
    start = time.perf_counter()
    spec = preset("conveyor-gearbox")
    harmonic_rich = 0
    improved = 0
    for seed in range(10):
        signal, _ = synth_fault_signal(spec, seed)
        report = diagnose(
            signal, PipelineConfig(initial_fault_freq_hz=4.1, rng_seed=seed)
        )
        harmonic_rich += len(report.harmonics) >= 3
        improved += report.envsi_processed > report.envsi_raw
    elapsed = time.perf_counter() - start
    ok = harmonic_rich >= 8 and improved >= 8 and elapsed < 60.0
    _report(
        "criterion 6 (gearbox surrogate)",
        ok,
        f">=3 harmonics {harmonic_rich}/10, envsi improved {improved}/10 "
        f"in {elapsed:.1f} s",
    )


def test_criterion_7_beats_kurtogram_baseline():
    start = time.perf_counter()
    spec = preset("conveyor-bearing")
    wins = 0
    contains = 0
    for seed in range(10):
        signal, truth = synth_fault_signal(spec, seed)
        report = diagnose(
            signal, PipelineConfig(initial_fault_freq_hz=12.6, rng_seed=seed)
        )
        result = fast_kurtogram(signal, max_level=6)
        low = result.best_center_hz - result.best_bandwidth_hz / 2.0
        high = result.best_center_hz + result.best_bandwidth_hz / 2.0
        contains += low <= truth["resonance_hz"] <= high
        baseline = band_filter(signal, result.best_center_hz, result.best_bandwidth_hz)
        baseline_envsi = envsi(
            squared_envelope_spectrum(baseline), spec.fault_freq_hz, n_harmonics=10
        )
        wins += report.envsi_processed >= baseline_envsi
    elapsed = time.perf_counter() - start
    ok = wins >= 7 and contains >= 8 and elapsed < 90.0
    _report(
        "criterion 7 (kurtogram baseline ordering)",
        ok,
        f"pipeline envsi wins {wins}/10, baseline band contains resonance "
        f"{contains}/10 in {elapsed:.1f} s",
    )


def test_criterion_8_period_refinement_recovers_truth():
    start = time.perf_counter()
    spec = replace(preset("conveyor-bearing"), noise_snr_db=20.0)
    params = MorletParams(center_freq_hz=3000.0, bandwidth_hz=1000.0)
    recovered = 0
    most_calls = 0
    worst_error = 0.0
    for seed in range(10):
        signal, truth = synth_fault_signal(spec, seed)
        filtered = wavelet_filter(signal, params)
        true_period = truth["period_samples"]
        period = 1.03 * true_period
        calls = 0
        for _ in range(5):
            refined = refine_period(filtered, period)
            calls += 1
            converged = abs(refined - period) <= 1e-9 * period
            period = refined
            if converged:
                break
        error = abs(period - true_period) / true_period
        worst_error = max(worst_error, error)
        most_calls = max(most_calls, calls)
        recovered += error <= 0.005
    elapsed = time.perf_counter() - start
    ok = recovered == 10 and most_calls <= 5 and elapsed < 10.0
    _report(
        "criterion 8 (period refinement)",
        ok,
        f"{recovered}/10 within 0.5% (worst {worst_error * 100:.3f}%), "
        f"max {most_calls} refinement calls in {elapsed:.2f} s",
    )


def test_criterion_9_diagnose_is_deterministic(tmp_path):
    record = tmp_path / "gear.csv"
    assert main(
        ["synth", "--preset", "conveyor-gearbox", "--seed", "0", "--out", str(record)]
    ) == 0
    outputs = []
    for name in ("first", "second"):
        out = tmp_path / name
        code = main(
            [
                "diagnose",
                "--input", str(record),
                "--rate", "8192",
                "--fault-freq", "4.1",
                "--seed", "0",
                "--population", "10",
                "--iterations", "12",
                "--out", str(out),
            ]
        )
        assert code == 0
        outputs.append(out)
    report_same = (
        (outputs[0] / "report.json").read_bytes()
        == (outputs[1] / "report.json").read_bytes()
    )
    ses_same = (
        (outputs[0] / "ses.csv").read_bytes() == (outputs[1] / "ses.csv").read_bytes()
    )
    best = json.loads((outputs[0] / "report.json").read_text())["results"]["best_ck"]
    _report(
        "criterion 9 (deterministic outputs)",
        report_same and ses_same,
        f"report.json identical: {report_same}, ses.csv identical: {ses_same} "
        f"(best CK {best:.3e})",
    )
