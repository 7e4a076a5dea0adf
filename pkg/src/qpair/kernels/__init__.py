"""Hot kernels with a compiled core and a numpy fallback.

The compiled module is used when it imports and ``QPAIR_PURE_PYTHON`` is not
set to a true value. ``BACKEND`` names the active implementation.
"""
import os

import numpy as np

from . import _pykernels
from ._pykernels import GOLDEN, splitmix64

_impl = _pykernels
BACKEND = "python"

if os.environ.get("QPAIR_PURE_PYTHON", "").lower() not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels


def partial_trace(rho, na, nb, over_b=True):
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    return _impl.partial_trace(rho, int(na), int(nb), bool(over_b))


def partial_transpose(rho, na, nb, on_b=True):
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    return _impl.partial_transpose(rho, int(na), int(nb), bool(on_b))


def sample_counts(cdf, key, start, stop):
    cdf = np.ascontiguousarray(cdf, dtype=np.float64)
    return _impl.sample_counts(cdf, int(key), int(start), int(stop))


def derive_key(seed, *labels):
    """64-bit stream key from a seed and integer labels (e.g. a series index)."""
    z = splitmix64(int(seed))
    for lab in labels:
        z = splitmix64(z ^ splitmix64(int(lab) + GOLDEN))
    return z


__all__ = [
    "BACKEND",
    "derive_key",
    "partial_trace",
    "partial_transpose",
    "sample_counts",
    "splitmix64",
]
