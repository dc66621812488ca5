"""SVG figure emission for diagnosis reports.

Rendering is headless and reproducible: fixed hash salt, no embedded
timestamps, so rerunning a diagnosis rewrites visually identical files.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .signal_core import EnvelopeSpectrum

plt.rcParams["svg.hashsalt"] = "faultband"

_SAVE_OPTS = {"format": "svg", "metadata": {"Date": None}}


def save_waveform_plot(path, samples, sample_rate_hz: float, title: str) -> None:
    """Time-domain trace of a record."""
    t = np.arange(len(samples)) / sample_rate_hz
    fig, ax = plt.subplots(figsize=(8.0, 3.0))
    ax.plot(t, samples, linewidth=0.4, color="#1f4e79")
    ax.set_xlabel("time [s]")
    ax.set_ylabel("amplitude")
    ax.set_title(title)
    ax.margins(x=0)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)


def save_ses_plot(
    path,
    ses: EnvelopeSpectrum,
    fault_freq_hz: float,
    harmonics,
    title: str = "squared envelope spectrum",
) -> None:
    """SES with the detected fault harmonics marked.

    The frequency axis is clipped to a bit past the last harmonic window
    so the comb stays readable.
    """
    top_hz = min(ses.max_frequency_hz, 12.0 * fault_freq_hz)
    keep = ses.frequencies_hz <= top_hz
    fig, ax = plt.subplots(figsize=(8.0, 3.5))
    ax.plot(ses.frequencies_hz[keep], ses.magnitudes[keep], linewidth=0.8,
            color="#1f4e79")
    for order, freq_hz, magnitude in harmonics:
        ax.axvline(freq_hz, color="#c44e52", linewidth=0.6, alpha=0.6)
        ax.annotate(f"{order}x", (freq_hz, magnitude), fontsize=7,
                    ha="center", va="bottom", color="#c44e52")
    ax.set_xlabel("frequency [Hz]")
    ax.set_ylabel("magnitude")
    ax.set_title(title)
    ax.margins(x=0)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
