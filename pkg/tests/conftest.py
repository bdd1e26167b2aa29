import numpy as np
import pytest

from eombias import kernels
from eombias.eom_model import EomParams
from eombias.estimator import dft_bin
from eombias.photodetector import DetectorConfig
from eombias.pilot_signal import PilotConfig, harmonic_bins
from eombias.sim_harness import Scenario

# Model parameters of the reference setup (V_pi and V_0 are free; chosen 1 V and 0 V).
P_IN = 1.0
F_IB = 0.5
C = 0.1
S0 = (50e-12) ** 2
FS = 5e6
FD = 0.5e6
N_PERIODS = 25
T_D = 50e-6
N_DFT = 250


@pytest.fixture
def eom():
    return EomParams(p_in=P_IN, v_pi=1.0, v_0=0.0, f_ib=F_IB)


@pytest.fixture
def detector():
    return DetectorConfig(c=C, s_0=S0, f_s=FS)


@pytest.fixture
def quiet_detector():
    return DetectorConfig(c=C, s_0=0.0, f_s=FS)


@pytest.fixture
def pilot():
    return PilotConfig(v_d=1e-3, f_d=FD, n_periods=N_PERIODS)


def scenario(f=1e-3, dv_norm=0.002, s_0=S0, seed=0, **pilot_kw):
    pilot = PilotConfig(v_d=f, f_d=pilot_kw.pop("f_d", FD), n_periods=pilot_kw.pop("n_periods", N_PERIODS), **pilot_kw)
    return Scenario(EomParams(), pilot, DetectorConfig(c=C, s_0=s_0, f_s=FS), dv_norm, seed)


def estimate_with_phase(trace, v_d, f_d, phi_d):
    """Offset estimate for a known, uncompensated pilot phase (complex rotation form)."""
    z1, z2 = harmonic_bins(len(trace), f_d, trace.f_s)
    ratio = dft_bin(trace.samples, z1) / dft_bin(trace.samples, z2)
    return (ratio * v_d / 4.0 * np.exp(1j * (phi_d - np.pi / 2))).real


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
