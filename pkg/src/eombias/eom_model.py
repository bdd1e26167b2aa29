"""Mach-Zehnder EOM power transfer model near its minimum-transmission point."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EomParams:
    """Physical constants of the modulator.

    Parameters
    ----------
    p_in : float
        Optical input power in W.
    v_pi : float
        Half-wave voltage in V.
    v_0 : float
        Zero-field phase-equivalent voltage in V. The targeted minimum sits at
        ``v_0 - v_pi``.
    f_ib : float
        Optical imbalance factor, ``0 < f_ib <= 0.5``.
    """

    p_in: float = 1.0
    v_pi: float = 1.0
    v_0: float = 0.0
    f_ib: float = 0.5

    def __post_init__(self):
        if not self.p_in > 0:
            raise ValueError(f"p_in must be positive, got {self.p_in}")
        if not self.v_pi > 0:
            raise ValueError(f"v_pi must be positive, got {self.v_pi}")
        if not 0 < self.f_ib <= 0.5:
            raise ValueError(f"f_ib must lie in (0, 0.5], got {self.f_ib}")
        if not np.isfinite(self.v_0):
            raise ValueError("v_0 must be finite")

    @property
    def v_min(self):
        """Control voltage of the targeted minimum."""
        return self.v_0 - self.v_pi


@dataclass(frozen=True)
class HarmonicComponents:
    """Magnitudes (W) and phases (rad) of the quadratic model's spectral lines."""

    s_dc: float
    s_1fd: float
    s_2fd: float
    phi_1fd: float
    phi_2fd: float


def power_at_offset(params, offset):
    """Exact output power for a control voltage ``offset`` volts below the minimum.

    ``offset = v_min - v_c``. Written as ``(1/2 - f_ib) + 2 f_ib sin^2(pi*offset/(2 v_pi))``,
    which equals the cosine transfer function but stays accurate close to the null.
    """
    s = np.sin(0.5 * np.pi * np.asarray(offset, dtype=float) / params.v_pi)
    return params.p_in * ((0.5 - params.f_ib) + 2.0 * params.f_ib * s * s)


def optical_output_power(params, v_c):
    """Output power ``P_in (1/2 + f_ib cos(pi (V_0 - v_c) / V_pi))`` for control voltage ``v_c``.

    Accepts scalars or arrays.
    """
    out = power_at_offset(params, params.v_min - np.asarray(v_c, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def taylor_output_power(params, delta_v, v_d, omega_d, phi_d, t):
    """Quadratic expansion of the output power around the minimum.

    Parameters
    ----------
    params : EomParams
    delta_v : float
        Offset of the bias from the true minimum, V.
    v_d : float
        Pilot amplitude, V.
    omega_d : float
        Pilot angular frequency, rad/s.
    phi_d : float
        Pilot phase, rad.
    t : float or ndarray
        Time, s.
    """
    u = delta_v + v_d * np.sin(omega_d * np.asarray(t, dtype=float) + phi_d)
    k = (np.pi / params.v_pi) ** 2
    out = params.p_in * (0.5 + params.f_ib * (-1.0 + 0.5 * k * u * u))
    return float(out) if np.ndim(out) == 0 else out


def harmonic_components(params, delta_v, v_d, phi_d=0.0):
    """Spectral lines of the quadratic model at DC, the pilot frequency and its double.

    The first-harmonic magnitude is signed: it carries the sign of ``delta_v``.
    """
    half_k = 0.5 * params.f_ib * (np.pi / params.v_pi) ** 2
    s_dc = params.p_in * (0.5 - params.f_ib + half_k * (0.5 * v_d**2 + delta_v**2))
    s_1fd = params.p_in * half_k * 2.0 * delta_v * v_d
    s_2fd = params.p_in * half_k * 0.5 * v_d**2
    return HarmonicComponents(
        s_dc=s_dc,
        s_1fd=s_1fd,
        s_2fd=s_2fd,
        phi_1fd=phi_d,
        phi_2fd=2.0 * phi_d - 0.5 * np.pi,
    )
