"""Pilot-tone estimation of an electro-optic modulator's offset from its minimum bias point."""

from .analysis import (
    MomentSet,
    VariancePrediction,
    ZeroDenominatorMean,
    black_level,
    moment_set,
    predicted_error_variance,
    ratio_variance_approx,
)
from .eom_model import (
    EomParams,
    HarmonicComponents,
    harmonic_components,
    optical_output_power,
    taylor_output_power,
)
from .estimator import (
    DegenerateDenominator,
    EstimateResult,
    LargeOffsetWarning,
    dft_bin,
    estimate_delta_v,
    estimate_delta_v_norm,
)
from .photodetector import DetectorConfig, SampledTrace, detect, phase_from_delay, simulate_burst
from .pilot_signal import (
    NonIntegerPeriods,
    NormalizedAmplitude,
    NyquistViolation,
    PilotConfig,
    SamplingError,
    compose_control_voltage,
    pilot_waveform,
    validate_sampling,
)
from .sim_harness import ErrorStats, Scenario, run_monte_carlo, sweep_amplitude, sweep_black_level

__version__ = "0.1.0"
