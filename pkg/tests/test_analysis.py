import math

import numpy as np
import pytest

from eombias.analysis import (
    MomentSet,
    ZeroDenominatorMean,
    black_level,
    black_level_grid,
    moment_set,
    predicted_error_variance,
    ratio_variance_approx,
)
from eombias.eom_model import EomParams
from eombias.photodetector import DetectorConfig

from .conftest import T_D

# 40-digit evaluation of the closed form at F = 1e-3, dv_norm = 0.002 and the reference detector
SIGMA2_REF = 1.334577693108963574589861824725430238438e-08
SIGMA_REF = 1.155239236309502939395520044140434339044e-04


def test_moments_reference():
    m = moment_set(EomParams(), DetectorConfig(), 1e-3, T_D, 0.0)
    assert m.mu_num == 0.0
    m = moment_set(EomParams(), DetectorConfig(), 1e-3, T_D, 0.002)
    # (1e-6 * 2.5e-21) / (4 * 5e-5) and (4 * 2.5e-21) / 5e-5
    assert m.var_num == pytest.approx(1.25e-23, rel=1e-12)
    assert m.var_den == pytest.approx(2.0e-16, rel=1e-12)
    assert m.mu_den == pytest.approx(-2.467401100272339654708622749969e-07, rel=1e-13)
    assert m.mu_num == pytest.approx(0.002 * m.mu_den, rel=1e-14)
    assert m.var_num / m.var_den == pytest.approx(1e-6 / 16, rel=1e-14)


def test_moments_require_positive_duration():
    with pytest.raises(ValueError):
        moment_set(EomParams(), DetectorConfig(), 1e-3, 0.0, 0.0)


def test_ratio_variance_limits():
    m = MomentSet(mu_num=0.0, mu_den=-2.0, var_num=3.0, var_den=5.0)
    assert ratio_variance_approx(m) == pytest.approx(3.0 / 4.0)
    assert ratio_variance_approx(MomentSet(1.0, 2.0, 0.0, 0.0)) == 0.0
    with pytest.raises(ZeroDenominatorMean):
        ratio_variance_approx(MomentSet(1.0, 0.0, 1.0, 1.0))


def test_ratio_variance_textbook_form():
    m = MomentSet(mu_num=1.5, mu_den=-4.0, var_num=0.2, var_den=0.3)
    textbook = m.mu_num**2 / m.mu_den**2 * (m.var_num / m.mu_num**2 + m.var_den / m.mu_den**2)
    assert ratio_variance_approx(m) == pytest.approx(textbook, rel=1e-14)


def test_prediction_reference():
    pred = predicted_error_variance(EomParams(), DetectorConfig(), 1e-3, T_D, 0.002)
    assert pred.sigma2 == pytest.approx(SIGMA2_REF, rel=1e-12)
    assert pred.sigma == pytest.approx(SIGMA_REF, rel=1e-12)
    assert pred.sigma == pytest.approx(math.sqrt(pred.sigma2), rel=1e-15)
    assert 0.5e-4 < pred.sigma < 2e-4


def test_prediction_halves_with_doubled_duration():
    a = predicted_error_variance(EomParams(), DetectorConfig(), 1e-3, T_D, 0.002)
    b = predicted_error_variance(EomParams(), DetectorConfig(), 1e-3, 2 * T_D, 0.002)
    assert b.sigma2 == pytest.approx(a.sigma2 / 2, rel=1e-14)


def random_tuples(n, seed):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        eom = EomParams(
            p_in=10 ** rng.uniform(-3, 1),
            v_pi=10 ** rng.uniform(-1, 1),
            v_0=rng.uniform(-5, 5),
            f_ib=rng.uniform(0.05, 0.5),
        )
        det = DetectorConfig(c=10 ** rng.uniform(-2, 2), s_0=10 ** rng.uniform(-24, -16), f_s=5e6)
        f = 10 ** rng.uniform(-4, -1)
        t_d = 10 ** rng.uniform(-6, -2)
        dv_norm = rng.uniform(-0.01, 0.01)
        yield eom, det, f, t_d, dv_norm


def test_moment_route_equals_closed_form():
    for eom, det, f, t_d, dvn in random_tuples(300, 1):
        via_moments = ratio_variance_approx(moment_set(eom, det, f, t_d, dvn * eom.v_pi))
        closed = predicted_error_variance(eom, det, f, t_d, dvn).sigma2
        assert via_moments == pytest.approx(closed, rel=1e-12)


def test_monotonicity():
    eom, det = EomParams(), DetectorConfig()
    base = predicted_error_variance(eom, det, 1e-3, T_D, 0.002).sigma2
    assert predicted_error_variance(eom, det, 1e-3, 2 * T_D, 0.002).sigma2 < base
    assert predicted_error_variance(eom, DetectorConfig(c=0.2), 1e-3, T_D, 0.002).sigma2 < base
    assert predicted_error_variance(eom, DetectorConfig(s_0=2 * det.s_0), 1e-3, T_D, 0.002).sigma2 > base
    assert predicted_error_variance(eom, det, 1e-3, T_D, 0.003).sigma2 > base
    assert predicted_error_variance(eom, det, 1e-3, T_D, -0.003).sigma2 > base


def test_prediction_halves_sigma_when_amplitude_doubles_at_zero_offset():
    eom, det = EomParams(), DetectorConfig()
    a = predicted_error_variance(eom, det, 2e-3, T_D, 0.0).sigma
    b = predicted_error_variance(eom, det, 4e-3, T_D, 0.0).sigma
    assert b == pytest.approx(a / 2, rel=1e-14)


def test_black_level_dark():
    assert black_level(EomParams(f_ib=0.5), 0.0, 0.0) == -math.inf


def test_black_level_reference_values():
    eom = EomParams()
    # 10 log10(sin^2(pi * 0.005)) and 10 log10(sin^2(pi * 0.001)), 40-digit evaluation
    assert black_level(eom, 0.0, 1e-2) == pytest.approx(-36.07795965522895, abs=1e-10)
    assert black_level(eom, 0.002, 0.0) == pytest.approx(-50.05701683383779, abs=1e-10)
    assert black_level(eom, 0.002, 1e-9) == pytest.approx(-50.05701683383779, abs=1e-5)


@pytest.mark.parametrize("dv, vd", [(0.0, 1e-2), (0.002, 1e-3), (-0.004, 2e-2), (0.3, 0.2), (0.1, 0.5)])
def test_black_level_grid_cross_check(dv, vd):
    eom = EomParams(f_ib=0.47, v_pi=1.3)
    assert black_level(eom, dv, vd) == pytest.approx(black_level_grid(eom, dv, vd, n=65536), abs=1e-6)


def test_black_level_outside_basin_uses_grid():
    eom = EomParams()
    # pilot sweeps through the maximum transmission point
    assert black_level(eom, 0.5, 0.8) == pytest.approx(0.0, abs=1e-6)


def test_black_level_monotonic():
    eom = EomParams()
    f = np.logspace(-5, -1, 40)
    levels = [black_level(eom, 0.0, x) for x in f]
    assert np.all(np.diff(levels) > 0)
    at_f = [black_level(eom, dv, 1e-3) for dv in np.linspace(-0.01, 0.01, 41)]
    assert np.argmin(at_f) == 20
