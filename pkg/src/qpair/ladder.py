"""Ladder operators attached to an ordered basis, and the tomography family.

For an ordered basis ``|1>, ..., |N>`` the raising operator has matrix
element ``sqrt((N - k) k)`` from ``|k>`` to ``|k+1>`` and the lowering one is
its adjoint. ``L3`` is *defined* as ``(L+ L- - L- L+) / 2``; it comes out
diagonal with entries ``k - 1 - (N - 1)/2``, a symmetric unit-spaced
spectrum.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, DimTooSmall

GAP_TOL = 1e-8


@dataclass(frozen=True)
class LadderTriple:
    n: int
    raising: np.ndarray
    lowering: np.ndarray
    l3: np.ndarray

    @property
    def l3_values(self):
        return np.real(np.diag(self.l3))


@dataclass(frozen=True)
class ObservableFamily:
    n: int
    members: tuple
    angles: np.ndarray


def _check_dim(n):
    if int(n) != n or n < 2:
        raise DimTooSmall(f"ladder operators need N >= 2, got {n}")
    return int(n)


def ladder_operators(n, basis=None):
    """Ladder triple of the standard basis, or of the columns of ``basis``.

    ``basis`` must be unitary; the operators are built directly from its
    columns, which makes them equal ``U L U^H`` for the standard-basis triple.
    """
    n = _check_dim(n)
    raising = np.zeros((n, n), dtype=np.complex128)
    lowering = np.zeros((n, n), dtype=np.complex128)
    if basis is None:
        vecs = np.eye(n, dtype=np.complex128)
    else:
        vecs = np.asarray(basis, dtype=np.complex128)
        if vecs.shape != (n, n):
            raise DimMismatch(f"basis must be {n}x{n}, got {vecs.shape}")
    for k in range(1, n + 1):
        ket = vecs[:, k - 1]
        if k < n:
            raising += np.sqrt((n - k) * k) * np.outer(vecs[:, k], ket.conj())
        if k > 1:
            lowering += np.sqrt((n + 1 - k) * (k - 1)) * np.outer(vecs[:, k - 2], ket.conj())
    l3 = (raising @ lowering - lowering @ raising) / 2
    return LadderTriple(n, raising, lowering, l3)


def diagonal_observable(values):
    """``sum_k O_k |k><k|`` in the basis the ladder operators are attached to."""
    values = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise ValueError("observable eigenvalues must be finite")
    return np.diag(values).astype(np.complex128)


def family_angles(n):
    n = _check_dim(n)
    return np.arange(n + 1) * np.pi / (n + 1)


def tomography_family(n):
    """The ``N + 1`` observables ``cos(a_m) L3 + sin(a_m) (L+ + L-)/2``, ``a_m = m pi/(N+1)``.

    They pairwise fail to commute:
    ``[O_m, O_n] = sin(a_n - a_m) (L+ - L-) / 2``.
    """
    trip = ladder_operators(n)
    angles = family_angles(n)
    half_x = (trip.raising + trip.lowering) / 2
    members = tuple(np.cos(a) * trip.l3 + np.sin(a) * half_x for a in angles)
    return ObservableFamily(trip.n, members, angles)


def azimuthal_rotation(n, chi):
    """``exp(-i chi L3)``, the rotation about the quantization axis."""
    trip = ladder_operators(n)
    return np.diag(np.exp(-1j * chi * trip.l3_values))


def completed_family(n):
    """Paper family plus copies rotated about ``L3`` by ``r pi / N``, ``r = 1..N-1``.

    The base family is real symmetric, so it is blind to ``Im(rho)``; the
    rotated copies make the combined set informationally complete. Member 0
    (``L3`` itself) is rotation invariant and is not repeated.
    """
    base = tomography_family(n)
    members = list(base.members)
    angles = list(base.angles)
    for r in range(1, base.n):
        u = azimuthal_rotation(base.n, r * np.pi / base.n)
        for a, obs in zip(base.angles[1:], base.members[1:]):
            members.append(u @ obs @ u.conj().T)
            angles.append(a)
    return ObservableFamily(base.n, tuple(members), np.array(angles))


def min_spectral_gap(obs):
    w = np.linalg.eigvalsh(obs)
    return float(np.min(np.diff(w))) if len(w) > 1 else np.inf
