"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--trials 2000] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from eombias import kernels
from eombias.eom_model import EomParams
from eombias.photodetector import DetectorConfig
from eombias.pilot_signal import PilotConfig
from eombias.sim_harness import Scenario, run_monte_carlo


def bench(backend, trials, repeat):
    impl = kernels.get_backend(backend)
    rng = np.random.default_rng(0)
    clean = rng.uniform(size=250)
    noise = rng.normal(size=(trials, 250))
    _, sin1 = kernels.bin_table(250, 25)
    cos2, _ = kernels.bin_table(250, 50)
    batch = min(timeit.repeat(lambda: impl.harmonic_pair_batch(clean, noise, sin1, cos2), number=10, repeat=repeat)) / 10

    eom = EomParams()
    sc = Scenario(eom, PilotConfig(v_d=2e-3), DetectorConfig(), 0.002, seed=1)
    full = min(timeit.repeat(lambda: run_monte_carlo(sc, trials, backend=backend), number=1, repeat=repeat))
    return batch, full


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"selected backend: {kernels.BACKEND}")
    print(f"{'backend':<8} {'kernel [ms]':>12} {'monte carlo [ms]':>17}")
    results = {}
    for name in kernels.available_backends():
        batch, full = bench(name, args.trials, args.repeat)
        results[name] = (batch, full)
        print(f"{name:<8} {batch * 1e3:12.3f} {full * 1e3:17.3f}")
    if len(results) == 2:
        py, cy = results["python"], results["cython"]
        print(f"speedup  {py[0] / cy[0]:12.2f}x {py[1] / cy[1]:16.2f}x")


if __name__ == "__main__":
    main()
