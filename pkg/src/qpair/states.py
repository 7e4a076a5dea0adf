"""Constructors and validity checks for qubit and bipartite states.

Qubit states follow the half-angle Bloch convention

    |theta, phi> = cos(theta/2) |0> + exp(i phi/2) sin(theta/2) |1>

with ``theta`` in [0, pi] and ``phi`` in [0, 2 pi). Matrices are plain
complex ``ndarray`` objects; bipartite functions take the subsystem
dimensions separately.
"""
from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized, ParamOutOfRange
from .matcore import eigvals_hermitian, hermiticity_residual

DENSITY_TOL = 1e-9
NORM_TOL = 1e-10
RENORM_LIMIT = 1e-6


def _check_angles(theta, phi):
    if not (0.0 <= theta <= np.pi):
        raise ParamOutOfRange(f"theta={theta} outside [0, pi]")
    if not (0.0 <= phi < 2 * np.pi):
        raise ParamOutOfRange(f"phi={phi} outside [0, 2pi)")


def _check_weight(p, name="p"):
    if not (0.0 <= p <= 1.0):
        raise ParamOutOfRange(f"{name}={p} outside [0, 1]")


def qubit_ket(theta, phi):
    _check_angles(theta, phi)
    return np.array([np.cos(theta / 2), np.exp(0.5j * phi) * np.sin(theta / 2)])


def qubit_pure(theta, phi):
    """Projector onto ``|theta, phi>``."""
    _check_angles(theta, phi)
    c, s = np.cos(theta), np.sin(theta)
    off = 0.5 * s * np.exp(-0.5j * phi)
    return np.array([[(1 + c) / 2, off], [np.conj(off), (1 - c) / 2]], dtype=np.complex128)


def qubit_mixed(p, theta, phi):
    """Qubit that is ``|1>`` (the antipode of ``|theta, phi>``) with weight ``p``.

    Equals ``2p * I/2 + (1 - 2p) * rho(theta, phi)``; that white-noise form
    only has nonnegative weights for ``p <= 1/2`` but is the same matrix as
    ``(1 - p) P0 + p (I - P0)`` for every ``p``.
    """
    _check_weight(p)
    p0 = qubit_pure(theta, phi)
    return (1 - p) * p0 + p * (np.eye(2) - p0)


def pure_from_vector(vec):
    """Density matrix ``|v><v|``; drift up to 1e-6 in the norm is renormalized."""
    v = np.asarray(vec, dtype=np.complex128).ravel()
    norm = np.linalg.norm(v)
    if abs(norm - 1) > RENORM_LIMIT:
        raise NotNormalized(f"|v| = {norm:.12g}")
    if abs(norm - 1) > NORM_TOL:
        v = v / norm
    return np.outer(v, v.conj())


def epr_state(phi=0.0):
    """``(e^{i phi/2} |0>|1> + e^{-i phi/2} |1>|0>) / sqrt(2)`` in flat indexing."""
    v = np.zeros(4, dtype=np.complex128)
    v[1] = np.exp(0.5j * phi)
    v[2] = np.exp(-0.5j * phi)
    return v / np.sqrt(2)


def classical_correlated_mix(p):
    """Both qubits ``0`` with probability ``p``, both ``1`` otherwise."""
    _check_weight(p)
    return np.diag([p, 0.0, 0.0, 1.0 - p]).astype(np.complex128)


@dataclass(frozen=True)
class ValidityReport:
    hermiticity_residual: float
    min_eigenvalue: float
    trace_deviation: float
    tol: float = DENSITY_TOL

    @property
    def hermitian(self):
        return self.hermiticity_residual <= self.tol

    @property
    def positive(self):
        return self.min_eigenvalue >= -self.tol

    @property
    def unit_trace(self):
        return self.trace_deviation <= self.tol

    @property
    def ok(self):
        return self.hermitian and self.positive and self.unit_trace

    def failures(self):
        out = []
        if not self.hermitian:
            out.append(f"not Hermitian (residual {self.hermiticity_residual:.3e})")
        if not self.positive:
            out.append(f"negative eigenvalue {self.min_eigenvalue:.6g}")
        if not self.unit_trace:
            out.append(f"trace deviates from 1 by {self.trace_deviation:.3e}")
        return out

    def to_dict(self):
        return {
            "hermiticity_residual": self.hermiticity_residual,
            "min_eigenvalue": self.min_eigenvalue,
            "trace_deviation": self.trace_deviation,
            "hermitian": self.hermitian,
            "positive": self.positive,
            "unit_trace": self.unit_trace,
            "ok": self.ok,
        }


def validate(rho, tol=DENSITY_TOL):
    """Report on the density-matrix invariants; never raises on bad physics."""
    rho = np.asarray(rho, dtype=np.complex128)
    herm = hermiticity_residual(rho)
    sym = (rho + rho.conj().T) / 2
    min_ev = float(eigvals_hermitian(sym)[-1])
    tr_dev = float(abs(np.trace(rho) - 1))
    return ValidityReport(herm, min_ev, tr_dev, tol)


def random_unitary(n, rng=None):
    """Haar-random unitary (QR of a Ginibre matrix with phase fix)."""
    rng = np.random.default_rng(rng)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_density_matrix(n, rng=None, rank=None):
    """Random state ``G G^H / tr`` from an ``n x rank`` Ginibre matrix."""
    rng = np.random.default_rng(rng)
    k = n if rank is None else rank
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure_vector(n, rng=None):
    rng = np.random.default_rng(rng)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)
