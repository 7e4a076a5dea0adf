"""Dense complex matrix kernel for bipartite systems.

Conventions used everywhere in the package:

* the induced (product) basis is flattened row-major, ``flat = m * nb + n``
  with subsystem A as the slow index, which is exactly ``np.kron(A, B)``;
* eigenvalues are reported in descending order.
"""
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import DimMismatch, NotHermitian, NotSquare

HERMITIAN_TOL = 1e-9


class Dims(NamedTuple):
    """Subsystem dimensions ``(na, nb)`` of a bipartite space."""

    na: int
    nb: int

    @property
    def total(self):
        return self.na * self.nb

    def flat(self, m, n):
        return m * self.nb + n

    def split(self, flat):
        return divmod(flat, self.nb)


class EigenSystem(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


def as_dims(dims):
    if isinstance(dims, Dims):
        return dims
    na, nb = dims
    return Dims(int(na), int(nb))


def _check_square(m):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {m.shape}")
    return m


def hermiticity_residual(m):
    m = _check_square(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def eig_hermitian(m, tol=HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Inputs within ``tol`` of Hermitian are symmetrized as ``(M + M^H) / 2``
    first. The eigenvector choice inside degenerate eigenspaces is whatever
    LAPACK returns and carries no meaning.
    """
    m = _check_square(m).astype(np.complex128)
    res = hermiticity_residual(m)
    if res > tol:
        raise NotHermitian(f"max |M - M^H| = {res:.3e} exceeds {tol:.1e}")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return EigenSystem(w[::-1].copy(), v[:, ::-1].copy())


def eigvals_hermitian(m, tol=HERMITIAN_TOL):
    """Descending eigenvalues only (cheaper than :func:`eig_hermitian`)."""
    m = _check_square(m).astype(np.complex128)
    res = hermiticity_residual(m)
    if res > tol:
        raise NotHermitian(f"max |M - M^H| = {res:.3e} exceeds {tol:.1e}")
    return np.linalg.eigvalsh((m + m.conj().T) / 2)[::-1].copy()


def tensor(a, b):
    return np.kron(np.asarray(a), np.asarray(b))


def _bipartite(rho, dims):
    rho = _check_square(rho)
    dims = as_dims(dims)
    if rho.shape[0] != dims.total:
        raise DimMismatch(f"matrix is {rho.shape[0]}x{rho.shape[0]} but dims {tuple(dims)} need {dims.total}")
    return rho, dims


def _selector(which):
    which = which.upper()
    if which not in ("A", "B"):
        raise ValueError(f"subsystem selector must be 'A' or 'B', got {which!r}")
    return which == "B"


def partial_trace(rho, dims, over="B"):
    """Trace out subsystem ``over``; returns the marginal of the other one."""
    rho, dims = _bipartite(rho, dims)
    return kernels.partial_trace(rho, dims.na, dims.nb, _selector(over))


def partial_transpose(rho, dims, on="B"):
    """Transpose the ``on`` factor of every block of ``rho``."""
    rho, dims = _bipartite(rho, dims)
    return kernels.partial_transpose(rho, dims.na, dims.nb, _selector(on))
