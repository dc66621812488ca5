"""Command-line entry points.

Subcommands: ``diagnose`` (full pipeline with report, CSV, and SVG
output), ``kurtogram`` (baseline band map), ``synth`` (generate a test
record), and ``ck`` (one correlated-kurtosis value). Exit codes: 0 on
success, 2 for configuration problems, 3 for bad input data.
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .cktools import CkSpec, correlated_kurtosis
from .errors import ConfigurationError, InitializationError, InvalidInputError
from .io import (
    load_run_config,
    read_signal,
    write_json,
    write_kurtogram_map_csv,
    write_samples_csv,
    write_ses_csv,
)
from .kurtogram import band_filter, fast_kurtogram
from .morlet import wavelet_filter
from .pipeline import PipelineConfig, diagnose
from .plots import save_ses_plot, save_waveform_plot
from .signal_core import squared_envelope_spectrum
from .synth import PRESETS, preset, synth_fault_signal

REPORT_SCHEMA_VERSION = 1


def _pick(cli_value, config: dict, key: str, default=None):
    """CLI flag wins over config-file value wins over default."""
    if cli_value is not None:
        return cli_value
    return config.get(key, default)


def _load_input(args, config: dict):
    path = _pick(args.input, config, "input")
    if path is None:
        raise ConfigurationError("--input is required")
    rate = _pick(args.rate, config, "rate_hz")
    fmt = _pick(args.format, config, "format")
    channel = _pick(args.channel, config, "channel", 0)
    return read_signal(path, rate, fmt, channel), str(path), rate, fmt, channel


def _out_dir(args, config: dict) -> Path:
    out = _pick(args.out, config, "out_dir")
    if out is None:
        raise ConfigurationError("--out is required")
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _as_bounds(value):
    if value is None:
        return None
    lo, hi = value
    return (float(lo), float(hi))


def _cmd_diagnose(args) -> int:
    config = load_run_config(args.config) if args.config else {}
    signal, in_path, rate, fmt, channel = _load_input(args, config)
    out = _out_dir(args, config)

    fault_freq = _pick(args.fault_freq, config, "initial_fault_freq_hz")
    if fault_freq is None:
        raise ConfigurationError("--fault-freq is required")
    refine = not args.no_refine if args.no_refine else config.get("refine_period", True)
    pipeline_config = PipelineConfig(
        initial_fault_freq_hz=float(fault_freq),
        fc_bounds_hz=_as_bounds(config.get("fc_bounds_hz")),
        sigma_bounds_hz=_as_bounds(config.get("sigma_bounds_hz")),
        shift_order=int(_pick(args.shift_order, config, "shift_order", 1)),
        refine_period=refine,
        refine_search_frac=float(config.get("refine_search_frac", 0.05)),
        envsi_harmonics=int(config.get("envsi_harmonics", 10)),
        population_size=int(_pick(args.population, config, "population_size", 16)),
        max_iterations=int(_pick(args.iterations, config, "max_iterations", 40)),
        rng_seed=int(_pick(args.seed, config, "seed", 0)),
    )
    report = diagnose(signal, pipeline_config)
    processed = wavelet_filter(signal, report.optimal_params).values.real

    payload = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "config": {
            "input": in_path,
            "format": fmt,
            "channel": channel,
            "rate_hz": signal.sample_rate_hz,
            "seed": pipeline_config.rng_seed,
            "initial_fault_freq_hz": pipeline_config.initial_fault_freq_hz,
            "fc_bounds_hz": pipeline_config.fc_bounds_hz,
            "sigma_bounds_hz": pipeline_config.sigma_bounds_hz,
            "shift_order": pipeline_config.shift_order,
            "refine_period": pipeline_config.refine_period,
            "refine_search_frac": pipeline_config.refine_search_frac,
            "envsi_harmonics": pipeline_config.envsi_harmonics,
            "population_size": pipeline_config.population_size,
            "max_iterations": pipeline_config.max_iterations,
        },
        "results": {
            "center_freq_hz": report.optimal_params.center_freq_hz,
            "bandwidth_hz": report.optimal_params.bandwidth_hz,
            "fault_freq_hz": report.fault_freq_hz,
            "final_period_samples": report.final_period_samples,
            "best_ck": report.best_ck,
            "ck_history": [float(v) for v in report.ck_history],
            "kurtosis_raw": report.kurtosis_raw,
            "kurtosis_processed": report.kurtosis_processed,
            "envsi_raw": report.envsi_raw,
            "envsi_processed": report.envsi_processed,
            "harmonics": [
                {"order": order, "freq_hz": freq, "magnitude": magnitude}
                for order, freq, magnitude in report.harmonics
            ],
        },
    }
    write_json(out / "report.json", payload)
    write_ses_csv(out / "ses.csv", report.ses)
    write_samples_csv(out / "processed.csv", processed)
    save_waveform_plot(
        out / "raw_waveform.svg", signal.samples, signal.sample_rate_hz, "raw signal"
    )
    save_waveform_plot(
        out / "processed_waveform.svg", processed, signal.sample_rate_hz,
        "band-filtered signal",
    )
    save_ses_plot(out / "ses.svg", report.ses, report.fault_freq_hz, report.harmonics)

    print(
        f"fault frequency {report.fault_freq_hz:.3f} Hz; "
        f"band {report.optimal_params.center_freq_hz:.1f} Hz "
        f"+/- {report.optimal_params.bandwidth_hz / 2:.1f} Hz; "
        f"{len(report.harmonics)} harmonics; "
        f"envsi {report.envsi_raw:.4f} -> {report.envsi_processed:.4f}"
    )
    print(f"report written to {out}")
    return 0


def _cmd_kurtogram(args) -> int:
    config = load_run_config(args.config) if args.config else {}
    signal, in_path, _, _, _ = _load_input(args, config)
    out = _out_dir(args, config)

    result = fast_kurtogram(signal, args.max_level)
    filtered = band_filter(signal, result.best_center_hz, result.best_bandwidth_hz)
    write_kurtogram_map_csv(out / "map.csv", result)
    write_json(
        out / "band.json",
        {
            "schema_version": REPORT_SCHEMA_VERSION,
            "config": {
                "input": in_path,
                "rate_hz": signal.sample_rate_hz,
                "max_level": args.max_level,
            },
            "best": {
                "level": result.best_level,
                "center_hz": result.best_center_hz,
                "bandwidth_hz": result.best_bandwidth_hz,
                "kurtosis": result.best_kurtosis,
            },
        },
    )
    write_ses_csv(out / "ses.csv", squared_envelope_spectrum(filtered))
    print(
        f"best band {result.best_center_hz:.1f} Hz "
        f"+/- {result.best_bandwidth_hz / 2:.1f} Hz "
        f"(level {result.best_level}, kurtosis {result.best_kurtosis:.2f})"
    )
    print(f"kurtogram written to {out}")
    return 0


def _cmd_synth(args) -> int:
    spec = preset(args.preset)
    if args.snr_db is not None:
        spec = replace(spec, noise_snr_db=args.snr_db)
    signal, truth = synth_fault_signal(spec, args.seed)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_samples_csv(out, signal.samples)
    write_json(
        out.parent / "truth.json",
        {
            "preset": args.preset,
            "seed": args.seed,
            "sample_rate_hz": signal.sample_rate_hz,
            "n_samples": len(signal),
            "fault_freq_hz": spec.fault_freq_hz,
            "noise_snr_db": spec.noise_snr_db,
            **truth,
        },
    )
    print(f"wrote {len(signal)} samples to {out}")
    return 0


def _cmd_ck(args) -> int:
    if args.input is None:
        raise ConfigurationError("--input is required")
    channel = 0 if args.channel is None else args.channel
    signal = read_signal(args.input, args.rate, args.format, channel)
    value = correlated_kurtosis(
        signal.samples, CkSpec(args.shift_order, args.period_samples)
    )
    print(f"{value:.12g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="faultband",
        description="Optimized band-pass fault diagnosis for vibration records.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input record (.csv or .wav)")
    common.add_argument("--rate", type=float, help="sample rate in Hz (CSV input)")
    common.add_argument("--format", choices=("csv", "wav"), help="override format")
    common.add_argument("--channel", type=int, help="WAV channel index")

    d = sub.add_parser("diagnose", parents=[common], help="run the full diagnosis")
    d.add_argument("--fault-freq", type=float, help="nominal fault frequency in Hz")
    d.add_argument("--config", help="JSON run-config file")
    d.add_argument("--seed", type=int, help="optimizer seed (default 0)")
    d.add_argument("--out", help="output directory")
    d.add_argument("--shift-order", type=int, help="CK shift order (default 1)")
    d.add_argument("--population", type=int, help="optimizer population size")
    d.add_argument("--iterations", type=int, help="optimizer iterations")
    d.add_argument("--no-refine", action="store_true", help="freeze the fault period")
    d.set_defaults(handler=_cmd_diagnose)

    k = sub.add_parser("kurtogram", parents=[common], help="baseline band map")
    k.add_argument("--max-level", type=int, default=7, help="decomposition depth")
    k.add_argument("--config", help="JSON run-config file")
    k.add_argument("--out", help="output directory")
    k.set_defaults(handler=_cmd_kurtogram)

    s = sub.add_parser("synth", help="generate a synthetic fault record")
    s.add_argument("--preset", required=True, choices=sorted(PRESETS))
    s.add_argument("--snr-db", type=float, help="override the preset noise SNR")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True, help="output CSV path")
    s.set_defaults(handler=_cmd_synth)

    c = sub.add_parser("ck", parents=[common], help="print one correlated kurtosis")
    c.add_argument("--period-samples", type=float, required=True)
    c.add_argument("--shift-order", type=int, default=1)
    c.set_defaults(handler=_cmd_ck)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ConfigurationError, InitializationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
