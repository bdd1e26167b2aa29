"""Photodetector chain: opto-electric conversion, AWGN, sampling and delay compensation."""

from dataclasses import dataclass, field

import numpy as np

from .eom_model import power_at_offset
from .pilot_signal import sample_phases, validate_sampling


@dataclass(frozen=True)
class DetectorConfig:
    """Photodetector, amplifier and ADC settings.

    Parameters
    ----------
    c : float
        Opto-electric conversion factor in V/W.
    s_0 : float
        One-sided noise power spectral density in V^2/Hz.
    f_s : float
        Sampling frequency in Hz.
    delta_tau : float
        Propagation delay between pilot and feedback signal in s. Must be an
        integer number of sample periods.
    """

    c: float = 0.1
    s_0: float = (50e-12) ** 2
    f_s: float = 5e6
    delta_tau: float = 0.0

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if not self.s_0 >= 0:
            raise ValueError(f"s_0 must be >= 0, got {self.s_0}")
        if not self.f_s > 0:
            raise ValueError(f"f_s must be positive, got {self.f_s}")
        if not self.delta_tau >= 0:
            raise ValueError(f"delta_tau must be >= 0, got {self.delta_tau}")

    @property
    def noise_var(self):
        """Per-sample noise variance after ideal low-pass filtering at f_s/2."""
        return self.s_0 * self.f_s / 2.0

    @property
    def noise_std(self):
        return float(np.sqrt(self.noise_var))

    def delay_samples(self):
        """Delay expressed in whole samples; fractional delays are rejected."""
        m = self.delta_tau * self.f_s
        n = round(m)
        if abs(m - n) > 1e-9 * max(1.0, m):
            raise ValueError(
                f"delta_tau = {self.delta_tau:g} s is not an integer number of samples "
                f"at f_s = {self.f_s:g} Hz"
            )
        return int(n)


@dataclass(frozen=True)
class SampledTrace:
    """Detector voltages on the delay-compensated time axis."""

    samples: np.ndarray = field(repr=False)
    f_s: float
    t0: float = 0.0

    def __post_init__(self):
        arr = np.array(self.samples, dtype=np.float64)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def __len__(self):
        return len(self.samples)

    @property
    def times(self):
        return self.t0 + np.arange(len(self.samples)) / self.f_s

    def scaled(self, gamma):
        return SampledTrace(self.samples * gamma, self.f_s, self.t0)


def phase_from_delay(delta_tau, f_d):
    """Pilot phase shift caused by a propagation delay: ``delta_tau * 2 pi f_d``."""
    return delta_tau * 2.0 * np.pi * f_d


def detect(power_samples, cfg, seed):
    """Convert sampled optical power to noisy detector voltages.

    Each sample is ``c * p[k] + n[k]`` with ``n[k] ~ N(0, s_0 f_s / 2)`` drawn from
    ``numpy.random.default_rng(seed)``.
    """
    p = np.asarray(power_samples, dtype=np.float64)
    if p.size == 0:
        raise ValueError("power_samples must not be empty")
    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, cfg.noise_std, size=p.shape)
    return SampledTrace(cfg.c * p + noise, cfg.f_s)


def received_power(eom, pilot, detector, v_hat_min):
    """Optical power as seen at the detector, before compensation.

    The pilot starts at t = 0 and is off before that, so the first
    ``delay_samples`` detector samples carry the bias-only output.
    """
    n_dft = validate_sampling(pilot, detector.f_s)
    m = detector.delay_samples()
    delta_v = eom.v_min - v_hat_min
    phase = sample_phases(pilot.n_periods, n_dft, pilot.phi_0)
    emitted = power_at_offset(eom, delta_v + pilot.v_d * np.sin(phase))
    lead = np.full(m, power_at_offset(eom, delta_v))
    return np.concatenate([lead, emitted])


def burst_power(eom, pilot, detector, v_hat_min):
    """Exact-model optical power over one burst on the compensated axis."""
    n_dft = validate_sampling(pilot, detector.f_s)
    m = detector.delay_samples()
    return received_power(eom, pilot, detector, v_hat_min)[m:m + n_dft]


def simulate_burst(eom, pilot, detector, v_hat_min, seed):
    """Simulate one noisy pilot burst through modulator and detector.

    Uses the exact cosine transfer function. The returned trace starts at the
    compensated time ``t' = 0``, so the effective pilot phase equals ``pilot.phi_0``.
    """
    return detect(burst_power(eom, pilot, detector, v_hat_min), detector, seed)
