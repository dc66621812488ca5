"""File ingestion and deterministic report emission.

Readers accept single-column CSV (header optional, sample rate supplied
by the caller) and PCM or float WAV. Writers emit JSON and CSV with
sorted keys and shortest-roundtrip float formatting, so identical runs
produce byte-identical files.
"""

import json
from pathlib import Path

import numpy as np
from scipy.io import wavfile

from .errors import ConfigurationError, ParseError
from .kurtogram import KurtogramResult
from .signal_core import EnvelopeSpectrum, Signal

#: Keys a run-config file may define; anything else is rejected.
RUN_CONFIG_KEYS = frozenset({
    "input", "format", "channel", "rate_hz", "out_dir", "seed",
    "initial_fault_freq_hz", "fc_bounds_hz", "sigma_bounds_hz",
    "shift_order", "refine_period", "refine_search_frac",
    "envsi_harmonics", "population_size", "max_iterations",
})

_PCM_SCALES = {
    np.dtype(np.int16): 2.0**15,
    np.dtype(np.int32): 2.0**31,
    np.dtype(np.uint8): None,  # offset binary, handled separately
}


def _infer_format(path: Path) -> str:
    suffix = path.suffix.lower()
    if suffix == ".csv":
        return "csv"
    if suffix == ".wav":
        return "wav"
    raise ConfigurationError(
        f"cannot infer format from {path.name!r}; pass format explicitly"
    )


def _read_csv_column(path: Path) -> np.ndarray:
    values = []
    header_allowed = True
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                if header_allowed:
                    header_allowed = False
                    continue
                raise ParseError(
                    f"{path}: line {lineno}: not a number: {text!r}"
                ) from None
            header_allowed = False
    if not values:
        raise ParseError(f"{path}: no numeric rows found")
    return np.array(values, dtype=np.float64)


def _read_wav(path: Path, channel: int):
    rate, data = wavfile.read(path)
    if data.ndim == 2:
        if not 0 <= channel < data.shape[1]:
            raise ConfigurationError(
                f"channel {channel} out of range; file has {data.shape[1]}"
            )
        data = data[:, channel]
    elif channel != 0:
        raise ConfigurationError("channel must be 0 for a mono file")
    if data.dtype == np.uint8:
        samples = (data.astype(np.float64) - 128.0) / 128.0
    elif data.dtype in _PCM_SCALES:
        samples = data.astype(np.float64) / _PCM_SCALES[data.dtype]
    else:
        samples = data.astype(np.float64)
    return float(rate), samples


def read_signal(
    path,
    sample_rate_hz: float | None = None,
    format: str | None = None,
    channel: int = 0,
) -> Signal:
    """Load a vibration record from CSV or WAV.

    CSV files need ``sample_rate_hz``; WAV files carry their own rate
    (24-bit PCM arrives via the 32-bit container and scales correctly).
    Integer PCM is normalized to [-1, 1].

    Raises
    ------
    ConfigurationError
        Unknown format, missing CSV sample rate, bad channel.
    ParseError
        Malformed CSV row (the message names the line).
    """
    path = Path(path)
    fmt = format or _infer_format(path)
    if fmt == "csv":
        if sample_rate_hz is None:
            raise ConfigurationError("--rate is required for CSV input")
        return Signal(_read_csv_column(path), sample_rate_hz)
    if fmt == "wav":
        rate, samples = _read_wav(path, channel)
        return Signal(samples, sample_rate_hz or rate)
    raise ConfigurationError(f"unknown format {fmt!r}; use csv or wav")


def load_run_config(path) -> dict:
    """Parse a JSON run-config file, rejecting unknown keys."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigurationError(f"{path}: top level must be an object")
    unknown = sorted(set(raw) - RUN_CONFIG_KEYS)
    if unknown:
        raise ConfigurationError(f"{path}: unknown keys: {', '.join(unknown)}")
    return raw


def _float_cell(value) -> str:
    return repr(float(value))


def write_json(path, payload: dict) -> None:
    """Dump JSON with sorted keys; same payload, same bytes."""
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def write_ses_csv(path, ses: EnvelopeSpectrum) -> None:
    lines = ["freq_hz,magnitude"]
    for freq, mag in zip(ses.frequencies_hz, ses.magnitudes):
        lines.append(f"{_float_cell(freq)},{_float_cell(mag)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_samples_csv(path, values, header: str = "sample") -> None:
    lines = [header]
    lines.extend(_float_cell(v) for v in values)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_kurtogram_map_csv(path, result: KurtogramResult) -> None:
    lines = ["level,band_index,center_hz,bandwidth_hz,kurtosis"]
    nyquist = result.sample_rate_hz / 2.0
    for level, kurtoses in result.levels:
        width = nyquist / kurtoses.size
        for j, value in enumerate(kurtoses):
            center = (j + 0.5) * width
            lines.append(
                f"{_float_cell(level)},{j},{_float_cell(center)},"
                f"{_float_cell(width)},{_float_cell(value)}"
            )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
