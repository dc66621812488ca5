"""Band-optimized envelope analysis for rotating-machinery vibration.

The package finds the resonance band that best exposes a periodic
impact train, filters it with a Morlet band-pass shaped by a crayfish
optimization of correlated kurtosis, and reads fault signatures off the
squared envelope spectrum.
"""

from .cktools import CkSpec, correlated_kurtosis, period_samples, refine_period
from .coa import CoaConfig, OptimizationResult, Population, optimize
from .errors import (
    ConfigurationError,
    DegenerateInputError,
    FaultBandError,
    InitializationError,
    InvalidInputError,
    ParseError,
)
from .kurtogram import KurtogramResult, band_filter, fast_kurtogram
from .morlet import MorletParams, morlet_gain, time_domain_wavelet, wavelet_filter
from .pipeline import DiagnosisReport, PipelineConfig, detect_harmonics, diagnose
from .signal_core import (
    ComplexSeries,
    EnvelopeSpectrum,
    Signal,
    analytic_signal,
    envsi,
    harmonic_snr,
    kurtosis,
    squared_envelope_spectrum,
)
from .synth import PRESETS, FaultSignalSpec, preset, synth_fault_signal

__version__ = "0.1.0"

__all__ = [
    "CkSpec",
    "CoaConfig",
    "ComplexSeries",
    "ConfigurationError",
    "DegenerateInputError",
    "DiagnosisReport",
    "EnvelopeSpectrum",
    "FaultBandError",
    "FaultSignalSpec",
    "InitializationError",
    "InvalidInputError",
    "KurtogramResult",
    "MorletParams",
    "OptimizationResult",
    "PRESETS",
    "ParseError",
    "PipelineConfig",
    "Population",
    "Signal",
    "analytic_signal",
    "band_filter",
    "correlated_kurtosis",
    "detect_harmonics",
    "diagnose",
    "envsi",
    "fast_kurtogram",
    "harmonic_snr",
    "kurtosis",
    "morlet_gain",
    "optimize",
    "period_samples",
    "preset",
    "refine_period",
    "squared_envelope_spectrum",
    "synth_fault_signal",
    "time_domain_wavelet",
    "wavelet_filter",
    "__version__",
]
