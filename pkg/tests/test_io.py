"""File readers and deterministic writers."""

import json

import numpy as np
import pytest
from scipy.io import wavfile

from faultband import (
    ConfigurationError,
    EnvelopeSpectrum,
    InvalidInputError,
    ParseError,
)
from faultband.io import (
    load_run_config,
    read_signal,
    write_json,
    write_samples_csv,
    write_ses_csv,
)


def test_csv_round_trip_preserves_samples(tmp_path):
    rng = np.random.default_rng(0)
    values = rng.standard_normal(64)
    path = tmp_path / "rec.csv"
    write_samples_csv(path, values)
    signal = read_signal(path, sample_rate_hz=100.0)
    assert signal.sample_rate_hz == 100.0
    assert np.array_equal(signal.samples, values)


def test_csv_header_line_is_skipped(tmp_path):
    path = tmp_path / "rec.csv"
    path.write_text("amplitude\n" + "\n".join(str(i) for i in range(20)) + "\n")
    signal = read_signal(path, sample_rate_hz=10.0)
    assert len(signal) == 20
    assert signal.samples[0] == 0.0


def test_csv_without_header_keeps_first_row(tmp_path):
    path = tmp_path / "rec.csv"
    path.write_text("\n".join(str(float(i)) for i in range(16)) + "\n")
    assert len(read_signal(path, sample_rate_hz=10.0)) == 16


def test_csv_blank_lines_ignored(tmp_path):
    path = tmp_path / "rec.csv"
    path.write_text("x\n\n" + "\n\n".join(str(i) for i in range(16)) + "\n")
    assert len(read_signal(path, sample_rate_hz=10.0)) == 16


def test_csv_bad_row_reports_line_number(tmp_path):
    path = tmp_path / "rec.csv"
    path.write_text("value\n1.0\n2.0\noops\n4.0\n")
    with pytest.raises(ParseError, match=r"line 4.*'oops'"):
        read_signal(path, sample_rate_hz=10.0)


def test_csv_all_text_rejected(tmp_path):
    path = tmp_path / "rec.csv"
    path.write_text("only\n")
    with pytest.raises(ParseError, match="no numeric rows"):
        read_signal(path, sample_rate_hz=10.0)


def test_csv_requires_sample_rate(tmp_path):
    path = tmp_path / "rec.csv"
    write_samples_csv(path, np.arange(32.0))
    with pytest.raises(ConfigurationError, match="--rate"):
        read_signal(path)


def test_short_record_rejected(tmp_path):
    path = tmp_path / "rec.csv"
    path.write_text("\n".join(str(float(i)) for i in range(8)) + "\n")
    with pytest.raises(InvalidInputError, match="at least 16"):
        read_signal(path, sample_rate_hz=10.0)


def test_unknown_extension_needs_format(tmp_path):
    path = tmp_path / "rec.dat"
    path.write_text("1.0\n")
    with pytest.raises(ConfigurationError, match="format"):
        read_signal(path, sample_rate_hz=10.0)
    path2 = tmp_path / "rec2.dat"
    write_samples_csv(path2, np.arange(32.0))
    assert len(read_signal(path2, sample_rate_hz=10.0, format="csv")) == 32


def test_wav_int16_normalized_to_unit_range(tmp_path):
    fs = 8000
    t = np.arange(fs) / fs
    x = np.sin(2.0 * np.pi * 50.0 * t)
    path = tmp_path / "rec.wav"
    wavfile.write(path, fs, (x * 32767).astype(np.int16))
    signal = read_signal(path)
    assert signal.sample_rate_hz == float(fs)
    assert np.max(np.abs(signal.samples)) == pytest.approx(32767 / 32768, abs=1e-6)


def test_wav_stereo_channel_select(tmp_path):
    fs = 8000
    left = np.zeros(fs, dtype=np.int16)
    right = np.full(fs, 1000, dtype=np.int16)
    right[0] = 2000
    path = tmp_path / "rec.wav"
    wavfile.write(path, fs, np.column_stack([left, right]))
    assert np.all(read_signal(path, channel=0).samples == 0.0)
    signal = read_signal(path, channel=1)
    assert signal.samples[0] == pytest.approx(2000 / 32768)
    with pytest.raises(ConfigurationError, match="channel"):
        read_signal(path, channel=2)


def test_wav_float_passthrough(tmp_path):
    fs = 4000
    rng = np.random.default_rng(1)
    x = rng.standard_normal(fs).astype(np.float32)
    path = tmp_path / "rec.wav"
    wavfile.write(path, fs, x)
    signal = read_signal(path)
    assert np.allclose(signal.samples, x.astype(np.float64))


def test_run_config_round_trip(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"seed": 7, "rate_hz": 8192.0, "shift_order": 2}))
    config = load_run_config(path)
    assert config["seed"] == 7
    assert config["shift_order"] == 2


def test_run_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"seed": 7, "speling_error": 1}))
    with pytest.raises(ConfigurationError, match="speling_error"):
        load_run_config(path)


def test_run_config_rejects_invalid_json(tmp_path):
    path = tmp_path / "run.json"
    path.write_text("{not json")
    with pytest.raises(ParseError, match="invalid JSON"):
        load_run_config(path)


def test_run_config_rejects_non_object(tmp_path):
    path = tmp_path / "run.json"
    path.write_text("[1, 2]")
    with pytest.raises(ConfigurationError, match="object"):
        load_run_config(path)


def test_write_json_is_key_order_independent(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    write_json(a, {"x": 1, "y": {"b": 2.5, "a": 3}})
    write_json(b, {"y": {"a": 3, "b": 2.5}, "x": 1})
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().endswith("\n")


def test_ses_csv_round_trips_floats_exactly(tmp_path):
    rng = np.random.default_rng(2)
    magnitudes = np.abs(rng.standard_normal(40))
    ses = EnvelopeSpectrum(
        frequencies_hz=np.arange(40) * 0.3,
        magnitudes=magnitudes,
        resolution_hz=0.3,
    )
    path = tmp_path / "ses.csv"
    write_ses_csv(path, ses)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "freq_hz,magnitude"
    assert len(lines) == 41
    parsed = np.array([float(row.split(",")[1]) for row in lines[1:]])
    assert np.array_equal(parsed, magnitudes)
