"""Pilot tone definition, control-voltage composition and coherent-sampling checks."""

from dataclasses import dataclass

import numpy as np


class SamplingError(ValueError):
    """Pilot and sampling parameters do not allow an exact two-bin DFT."""


class NyquistViolation(SamplingError):
    pass


class NonIntegerPeriods(SamplingError):
    pass


@dataclass(frozen=True)
class NormalizedAmplitude:
    """Pilot amplitude relative to the half-wave voltage, ``F = V_d / V_pi``."""

    f: float

    def __post_init__(self):
        if not self.f >= 0:
            raise ValueError(f"normalized amplitude must be >= 0, got {self.f}")

    @classmethod
    def from_voltage(cls, v_d, v_pi):
        return cls(v_d / v_pi)

    def __float__(self):
        return float(self.f)


def as_normalized(f):
    """Accept a bare float or a :class:`NormalizedAmplitude`."""
    if isinstance(f, NormalizedAmplitude):
        return f
    return NormalizedAmplitude(float(f))


@dataclass(frozen=True)
class PilotConfig:
    """Sinusoidal pilot burst.

    Parameters
    ----------
    v_d : float
        Amplitude in V.
    f_d : float
        Frequency in Hz.
    phi_0 : float
        Chosen initial phase in rad.
    n_periods : int
        Number of full pilot periods in one burst.
    """

    v_d: float = 1e-3
    f_d: float = 0.5e6
    phi_0: float = 0.0
    n_periods: int = 25

    def __post_init__(self):
        if not self.v_d >= 0:
            raise ValueError(f"v_d must be >= 0, got {self.v_d}")
        if not self.f_d > 0:
            raise ValueError(f"f_d must be positive, got {self.f_d}")
        if int(self.n_periods) != self.n_periods or self.n_periods < 1:
            raise ValueError(f"n_periods must be a positive integer, got {self.n_periods}")

    @property
    def t_d(self):
        """Burst duration in s."""
        return self.n_periods / self.f_d

    @property
    def omega_d(self):
        return 2.0 * np.pi * self.f_d

    def normalized(self, v_pi):
        return NormalizedAmplitude.from_voltage(self.v_d, v_pi)


def pilot_waveform(cfg, phi_d, t):
    """Pilot voltage ``-V_d sin(2 pi f_d t + phi_d)`` at time(s) ``t``."""
    out = -cfg.v_d * np.sin(cfg.omega_d * np.asarray(t, dtype=float) + phi_d)
    return float(out) if np.ndim(out) == 0 else out


def sample_phases(n_periods, n_dft, phi_d=0.0, start=0, count=None):
    """Pilot phase ``omega_d * k / f_s + phi_d`` at integer sample indices.

    With ``n_periods`` periods in ``n_dft`` samples the phase index is reduced
    modulo ``n_dft`` in integer arithmetic, so every period is sampled identically.
    """
    if count is None:
        count = n_dft
    k = np.arange(start, start + count, dtype=np.int64)
    return 2.0 * np.pi * ((k * n_periods) % n_dft) / n_dft + phi_d


def sampled_pilot(cfg, n_dft, phi_d=None):
    """Pilot voltage at the ``n_dft`` sample instants of one burst."""
    if phi_d is None:
        phi_d = cfg.phi_0
    return -cfg.v_d * np.sin(sample_phases(cfg.n_periods, n_dft, phi_d))


def compose_control_voltage(v_hat_min, pilot):
    """Total control voltage: bias estimate plus the (already signed) pilot."""
    return v_hat_min + pilot


def _nearest_integer(x, rel_tol=1e-9):
    n = round(x)
    if abs(x - n) > rel_tol * max(1.0, abs(x)):
        return None
    return int(n)


def validate_sampling(cfg, f_s):
    """Check that a burst can be sampled coherently at ``f_s`` and return ``N_DFT``.

    Raises
    ------
    NyquistViolation
        If ``f_s <= 4 f_d`` (the second harmonic must stay below ``f_s / 2``).
    NonIntegerPeriods
        If ``f_s * n_periods / f_d`` is not an integer.
    """
    if not f_s > 0:
        raise SamplingError(f"sampling frequency must be positive, got {f_s}")
    if f_s <= 4.0 * cfg.f_d:
        raise NyquistViolation(
            f"f_s = {f_s:g} Hz must exceed 4 * f_d = {4.0 * cfg.f_d:g} Hz "
            "so that the 2nd pilot harmonic lies below f_s/2"
        )
    n_dft = _nearest_integer(f_s * cfg.n_periods / cfg.f_d)
    if n_dft is None:
        raise NonIntegerPeriods(
            f"{cfg.n_periods} pilot periods at f_d = {cfg.f_d:g} Hz do not span an "
            f"integer number of samples at f_s = {f_s:g} Hz"
        )
    z1 = cfg.n_periods
    if not 2 * z1 < n_dft / 2:
        raise NyquistViolation(f"bin {2 * z1} is not below N_DFT/2 = {n_dft / 2:g}")
    return n_dft


def harmonic_bins(n_dft, f_d, f_s):
    """DFT indices of the pilot frequency and its double for an ``n_dft`` record."""
    z1 = _nearest_integer(n_dft * f_d / f_s)
    if z1 is None or z1 < 1:
        raise NonIntegerPeriods(
            f"f_d = {f_d:g} Hz does not fall on a DFT bin for N = {n_dft}, f_s = {f_s:g} Hz"
        )
    z2 = 2 * z1
    if not z2 < n_dft / 2:
        raise NyquistViolation(f"bin {z2} is not below N_DFT/2 = {n_dft / 2:g}")
    return z1, z2
