"""Backend selection for the hot correlation loops.

The compiled extension ``eombias._kernels`` is used when it was built; otherwise
the numpy implementation in ``eombias._kernels_py`` takes over. Setting
``EOMBIAS_PURE_PYTHON=1`` forces the fallback.
"""

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("EOMBIAS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"


def available_backends():
    """Names of the backends importable in this environment."""
    names = ["python"]
    try:
        from . import _kernels  # noqa: F401
    except ImportError:
        pass
    else:
        names.append("cython")
    return names


def get_backend(name=None):
    """Return the kernel module for ``name`` (default: the selected one)."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels
        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")


def bin_table(n, k):
    """Cosine and sine tables for DFT bin ``k`` of an ``n``-point sequence.

    The phase index ``k*j mod n`` is reduced in integer arithmetic so that the
    tables are exactly periodic regardless of ``k``.
    """
    j = np.arange(n, dtype=np.int64)
    angle = 2.0 * np.pi * ((k * j) % n) / n
    return np.cos(angle), np.sin(angle)


def bin_sums(x, cos_t, sin_t):
    return _impl.bin_sums(np.ascontiguousarray(x, dtype=np.float64), cos_t, sin_t)


def harmonic_pair_batch(clean, noise, sin1, cos2):
    return _impl.harmonic_pair_batch(
        np.ascontiguousarray(clean, dtype=np.float64),
        np.ascontiguousarray(noise, dtype=np.float64),
        sin1,
        cos2,
    )
