"""Closed-form error-variance prediction and pilot-induced black level."""

import math
from dataclasses import dataclass

import numpy as np

from .eom_model import power_at_offset
from .pilot_signal import as_normalized


class ZeroDenominatorMean(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class MomentSet:
    """Means and variances of the estimator's numerator ``F*imag(bin_1f)`` and
    denominator ``4*real(bin_2f)``, in V and V^2."""

    mu_num: float
    mu_den: float
    var_num: float
    var_den: float


@dataclass(frozen=True)
class VariancePrediction:
    sigma2: float
    sigma: float


def moment_set(eom, detector, f, t_d, delta_v):
    """Gaussian moments of numerator and denominator for a burst of length ``t_d``."""
    if not t_d > 0:
        raise ValueError(f"t_d must be positive, got {t_d}")
    f = as_normalized(f).f
    s_0 = detector.s_0
    scale = -0.5 * np.pi**2 * detector.c * eom.p_in * eom.f_ib * f * f
    return MomentSet(
        mu_num=scale * (delta_v / eom.v_pi),
        mu_den=scale,
        var_num=f * f * s_0 / (4.0 * t_d),
        var_den=4.0 * s_0 / t_d,
    )


def ratio_variance_approx(m):
    """Normal approximation to the variance of ``num / den``.

    Evaluated as ``var_num/mu_den^2 + mu_num^2 var_den/mu_den^4``, the same
    expression with ``mu_num^2`` multiplied through, so ``mu_num = 0`` is allowed.
    """
    if m.mu_den == 0:
        raise ZeroDenominatorMean("denominator mean is zero")
    d2 = m.mu_den * m.mu_den
    return m.var_num / d2 + (m.mu_num * m.mu_num) * m.var_den / (d2 * d2)


def predicted_error_variance(eom, detector, f, t_d, delta_v_norm):
    """Closed-form variance of the normalized offset estimate.

    ``sigma^2 = (1/T_d) (S_0/C^2) (F^2 + 16 dv^2) / (pi^2 P_in f_ib F^2)^2``.
    Independent of the pilot frequency.
    """
    f = as_normalized(f).f
    if not t_d > 0:
        raise ValueError(f"t_d must be positive, got {t_d}")
    if not f > 0:
        raise ValueError(f"normalized pilot amplitude must be positive, got {f}")
    gain = np.pi**2 * eom.p_in * eom.f_ib * f * f
    sigma2 = (1.0 / t_d) * (detector.s_0 / detector.c**2) * (f * f + 16.0 * delta_v_norm**2) / gain**2
    return VariancePrediction(sigma2, math.sqrt(sigma2))


def _to_db(p_max, p_in):
    if p_max <= 0:
        return -math.inf
    return 10.0 * math.log10(p_max / p_in)


def black_level_grid(eom, delta_v, v_d, n=8192):
    """Black level from a dense grid over one pilot period (cross-check path)."""
    theta = 2.0 * np.pi * np.arange(n) / n
    p = power_at_offset(eom, delta_v + v_d * np.sin(theta))
    return _to_db(float(np.max(p)), eom.p_in)


def black_level(eom, delta_v, v_d):
    """Peak output power during the pilot relative to ``P_in``, in dB.

    Inside one basin (``|delta_v| + v_d < v_pi``) the power grows monotonically
    with distance from the minimum, so the peak sits at one of the two pilot
    extremes. Otherwise a grid over one period is used. Returns ``-inf`` for an
    exactly zero peak.
    """
    if abs(delta_v) + abs(v_d) < eom.v_pi:
        p_max = max(power_at_offset(eom, delta_v + v_d), power_at_offset(eom, delta_v - v_d))
        return _to_db(float(p_max), eom.p_in)
    return black_level_grid(eom, delta_v, v_d)
