"""Pure numpy implementation of the hot kernels.

This module is the reference: the compiled kernels must agree with it
bit-for-bit on sampling and to rounding on the matrix shuffles.
"""
import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1
_BLOCK = 1 << 18


def splitmix64(z):
    """SplitMix64 finalizer on a Python int (mod 2**64)."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def _mix_array(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def partial_trace(rho, na, nb, over_b):
    t = rho.reshape(na, nb, na, nb)
    if over_b:
        return np.einsum("ikjk->ij", t)
    return np.einsum("kikj->ij", t)


def partial_transpose(rho, na, nb, on_b):
    t = rho.reshape(na, nb, na, nb)
    if on_b:
        t = t.transpose(0, 3, 2, 1)
    else:
        t = t.transpose(2, 1, 0, 3)
    return np.ascontiguousarray(t.reshape(na * nb, na * nb))


def sample_counts(cdf, key, start, stop):
    """Histogram outcomes of shots ``start..stop-1``.

    Shot ``i`` draws ``u = mix(key + (i + 1) * GOLDEN) >> 11`` scaled to
    [0, 1) and lands in the first slot with ``u < cdf[slot]``.
    """
    cdf = np.asarray(cdf, dtype=np.float64)
    counts = np.zeros(cdf.shape[0], dtype=np.int64)
    k = np.uint64(key & _MASK)
    scale = 2.0 ** -53
    with np.errstate(over="ignore"):
        for lo in range(start, stop, _BLOCK):
            hi = min(lo + _BLOCK, stop)
            idx = np.arange(lo + 1, hi + 1, dtype=np.uint64)
            z = _mix_array(k + idx * np.uint64(GOLDEN))
            u = (z >> np.uint64(11)).astype(np.float64) * scale
            slot = np.searchsorted(cdf, u, side="right")
            np.minimum(slot, cdf.shape[0] - 1, out=slot)
            counts += np.bincount(slot, minlength=cdf.shape[0])
    return counts
