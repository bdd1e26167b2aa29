"""Monte Carlo validation of the offset estimator against the closed-form variance.

Every trial draws its noise from its own generator, seeded by
:func:`trial_seed` from the scenario seed and the trial index. Trials can
therefore run in any order and on any number of workers, and each one equals
``estimate_delta_v_norm(simulate_burst(..., seed=trial_seed(seed, i)))``.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from . import kernels
from .analysis import black_level, predicted_error_variance
from .eom_model import EomParams
from .estimator import denominator_floor
from .photodetector import DetectorConfig, burst_power
from .pilot_signal import PilotConfig, harmonic_bins, validate_sampling

#: trials per work unit; fixed so that results never depend on the worker count
CHUNK = 250


@dataclass(frozen=True)
class Scenario:
    """One experiment: modulator, pilot, detector, true offset and seed."""

    eom: EomParams = EomParams()
    pilot: PilotConfig = PilotConfig()
    detector: DetectorConfig = DetectorConfig()
    true_delta_v_norm: float = 0.0
    seed: int = 0

    def __post_init__(self):
        validate_sampling(self.pilot, self.detector.f_s)

    @property
    def v_hat_min(self):
        """Bias voltage actually applied, ``true_delta_v_norm * V_pi`` below the minimum."""
        return self.eom.v_0 - self.eom.v_pi - self.true_delta_v_norm * self.eom.v_pi

    @property
    def f(self):
        return self.pilot.v_d / self.eom.v_pi

    def with_amplitude(self, f):
        return replace(self, pilot=replace(self.pilot, v_d=f * self.eom.v_pi))


@dataclass(frozen=True)
class ErrorStats:
    """Aggregate of one Monte Carlo run.

    ``std_error`` is the root-mean-square deviation of the estimates from the
    true offset; ``spread`` is their sample standard deviation about their own
    mean. The two differ by the bias.
    """

    n_trials: int
    mean_estimate: float
    std_error: float
    bias: float
    predicted_std: float
    exclusions: int
    spread: float


class AmplitudeRow(NamedTuple):
    F: float
    std_error: float
    predicted_std: float
    bias: float
    exclusions: int
    n_trials: int


class BlackLevelRow(NamedTuple):
    dv_norm: float
    F: float
    p_bl_rel_db: float


def trial_seed(seed, index):
    """Integer seed of trial ``index``, via numpy's ``SeedSequence`` spawn keys."""
    ss = np.random.SeedSequence(seed, spawn_key=(index,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _noise_rows(seed, start, stop, n, std):
    out = np.empty((stop - start, n))
    for r, i in enumerate(range(start, stop)):
        out[r] = np.random.default_rng(trial_seed(seed, i)).normal(0.0, std, size=n)
    return out


def trial_estimates(sc, n_trials, workers=1, backend=None):
    """Per-trial normalized estimates; ``nan`` marks a degenerate denominator."""
    n = validate_sampling(sc.pilot, sc.detector.f_s)
    z1, z2 = harmonic_bins(n, sc.pilot.f_d, sc.detector.f_s)
    _, sin1 = kernels.bin_table(n, z1)
    cos2, _ = kernels.bin_table(n, z2)
    clean = sc.detector.c * burst_power(sc.eom, sc.pilot, sc.detector, sc.v_hat_min)
    impl = kernels.get_backend(backend)
    std = sc.detector.noise_std
    f = sc.f

    def run_chunk(bounds):
        start, stop = bounds
        noise = _noise_rows(sc.seed, start, stop, n, std)
        s1, c2 = impl.harmonic_pair_batch(clean, noise, sin1, cos2)
        im1 = -s1 / n
        re2 = c2 / n
        floor = denominator_floor(np.max(np.abs(clean + noise), axis=1))
        est = im1 / re2 * f / 4.0
        est[~(np.abs(re2) > floor)] = np.nan
        return start, est

    chunks = [(s, min(s + CHUNK, n_trials)) for s in range(0, n_trials, CHUNK)]
    out = np.empty(n_trials)
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_chunk, chunks))
    else:
        results = [run_chunk(c) for c in chunks]
    for start, est in results:
        out[start:start + len(est)] = est
    return out


def run_monte_carlo(sc, n_trials, workers=1, backend=None):
    """Run ``n_trials`` independent noisy bursts and compare with the prediction.

    Trials whose second-harmonic bin is degenerate are excluded and counted,
    never redrawn.
    """
    if n_trials < 2:
        raise ValueError(f"n_trials must be at least 2, got {n_trials}")
    if not sc.pilot.v_d > 0:
        raise ValueError("pilot amplitude must be positive")
    est = trial_estimates(sc, n_trials, workers=workers, backend=backend)
    ok = est[np.isfinite(est)]
    truth = sc.true_delta_v_norm
    pred = predicted_error_variance(sc.eom, sc.detector, sc.f, sc.pilot.t_d, truth).sigma
    if len(ok) < 2:
        nan = float("nan")
        return ErrorStats(n_trials, nan, nan, nan, pred, n_trials - len(ok), nan)
    err = ok - truth
    mean = float(np.mean(ok))
    return ErrorStats(
        n_trials=n_trials,
        mean_estimate=mean,
        std_error=float(np.sqrt(np.mean(err * err))),
        bias=mean - truth,
        predicted_std=pred,
        exclusions=n_trials - len(ok),
        spread=float(np.std(ok, ddof=1)),
    )


def sweep_amplitude(base, f_values, n_trials, workers=1, backend=None):
    """One Monte Carlo row per normalized pilot amplitude, in the order given.

    A failing row is kept with ``nan`` statistics so the sweep can continue.
    """
    f_values = list(f_values)
    if not f_values:
        raise ValueError("f_values must not be empty")
    rows = []
    for f in f_values:
        if not f > 0:
            raise ValueError(f"pilot amplitudes must be positive, got {f}")
        try:
            st = run_monte_carlo(base.with_amplitude(f), n_trials, workers=workers, backend=backend)
            rows.append(AmplitudeRow(f, st.std_error, st.predicted_std, st.bias, st.exclusions, n_trials))
        except (ValueError, ArithmeticError):
            nan = float("nan")
            rows.append(AmplitudeRow(f, nan, nan, nan, n_trials, n_trials))
    return rows


def sweep_black_level(eom, delta_v_norm_values, f_values):
    """Black level for every (offset, amplitude) pair, offsets outermost."""
    dvs = list(delta_v_norm_values)
    fs = list(f_values)
    if not dvs or not fs:
        raise ValueError("sweep grids must not be empty")
    return [
        BlackLevelRow(dv, f, black_level(eom, dv * eom.v_pi, f * eom.v_pi))
        for dv in dvs
        for f in fs
    ]
