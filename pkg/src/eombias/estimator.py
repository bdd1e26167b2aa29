"""Bias-offset estimation from the first- and second-harmonic DFT bins.

The estimator only ever sees detector samples plus the pilot amplitude; it has
no access to ``C``, ``P_in``, ``f_ib`` or ``V_pi``.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .pilot_signal import as_normalized, harmonic_bins

#: multiple of ``eps * max|sample|`` below which the 2nd-harmonic bin is unusable
DENOMINATOR_GUARD = 1e3


class DegenerateDenominator(ArithmeticError):
    """The real part of the second-harmonic bin is indistinguishable from zero."""


class LargeOffsetWarning(UserWarning):
    """The estimate lies outside the basin of the targeted minimum."""


@dataclass(frozen=True)
class EstimateResult:
    delta_v: float
    delta_v_norm: float | None
    bin_1f: complex
    bin_2f: complex
    large_offset: bool = False


def denominator_floor(max_abs):
    return DENOMINATOR_GUARD * np.finfo(float).eps * max_abs


def dft_bin(samples, k):
    """Single DFT bin ``(1/N) sum x[n] exp(-2j pi k n / N)``."""
    x = np.asarray(samples, dtype=np.float64)
    n = len(x)
    if not 0 <= k < n:
        raise IndexError(f"bin {k} out of range for {n} samples")
    cos_t, sin_t = kernels.bin_table(n, k)
    sc, ss = kernels.bin_sums(x, cos_t, sin_t)
    return complex(sc / n, -ss / n)


def _harmonic_ratio(trace, f_d):
    x = np.asarray(trace.samples, dtype=np.float64)
    z1, z2 = harmonic_bins(len(x), f_d, trace.f_s)
    b1 = dft_bin(x, z1)
    b2 = dft_bin(x, z2)
    floor = denominator_floor(np.max(np.abs(x)))
    if not abs(b2.real) > floor:
        raise DegenerateDenominator(
            f"|real(bin_2f)| = {abs(b2.real):.3g} V is below {floor:.3g} V; "
            "pilot too small or absent"
        )
    return b1.imag / b2.real, b1, b2


def estimate_delta_v(trace, v_d, f_d, v_pi=None):
    """Estimate the bias offset ``V_min - V_hat_min`` in volts.

    Parameters
    ----------
    trace : SampledTrace
        Detector output on the delay-compensated axis (pilot phase 0).
    v_d : float
        Pilot amplitude in V.
    f_d : float
        Pilot frequency in Hz, used only to locate the two bins.
    v_pi : float, optional
        When given, the normalized offset is filled in and offsets beyond
        ``v_pi / 2`` are flagged.

    Returns
    -------
    EstimateResult
    """
    if not v_d > 0:
        raise ValueError(f"pilot amplitude must be positive, got {v_d}")
    ratio, b1, b2 = _harmonic_ratio(trace, f_d)
    dv = ratio * v_d / 4.0
    dv_norm = None
    large = False
    if v_pi is not None:
        dv_norm = dv / v_pi
        large = abs(dv) > 0.5 * v_pi
        if large:
            warnings.warn(f"offset estimate {dv:g} V exceeds V_pi/2", LargeOffsetWarning, stacklevel=2)
    return EstimateResult(dv, dv_norm, b1, b2, large)


def estimate_delta_v_norm(trace, f, f_d):
    """Normalized offset ``Delta V / V_pi`` from the normalized pilot amplitude ``f``."""
    f = as_normalized(f).f
    if not f > 0:
        raise ValueError(f"normalized pilot amplitude must be positive, got {f}")
    ratio, _, _ = _harmonic_ratio(trace, f_d)
    est = ratio * f / 4.0
    if abs(est) > 0.5:
        warnings.warn(f"normalized offset estimate {est:g} exceeds 1/2", LargeOffsetWarning, stacklevel=2)
    return est
