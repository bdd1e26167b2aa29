"""Pure-numpy fallback for the correlation kernels in ``_kernels.pyx``."""

import numpy as np


def bin_sums(x, cos_t, sin_t):
    """Return ``(sum(x * cos_t), sum(x * sin_t))``."""
    x = np.asarray(x, dtype=np.float64)
    if len(cos_t) != len(x) or len(sin_t) != len(x):
        raise ValueError("table length does not match sample count")
    return float(np.sum(x * cos_t)), float(np.sum(x * sin_t))


def harmonic_pair_batch(clean, noise, sin1, cos2):
    """Correlate ``clean + noise[r]`` with ``sin1`` and ``cos2`` for every row r."""
    noise = np.asarray(noise, dtype=np.float64)
    n = noise.shape[1]
    if len(clean) != n or len(sin1) != n or len(cos2) != n:
        raise ValueError("table length does not match sample count")
    rows = clean + noise
    # row-wise pairwise sums; independent of how many rows are in the batch
    return (rows * sin1).sum(axis=1), (rows * cos2).sum(axis=1)
