"""Ladder-family tomography: simulate the measurement series and invert it.

Outcome ``k`` of series ``m`` is the ``k``-th eigenvector of family member
``m`` with eigenvalues in ascending order. Each eigenvector is phase-fixed so
that its largest-magnitude component is real and positive.

The base family has ``N + 1`` real symmetric members and therefore only
constrains ``Re(rho)``. Pass ``complete=True`` to add the azimuthally rotated
copies from :func:`qpair.ladder.completed_family`, which pin down the
imaginary part too.
"""
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimMismatch, IllConditioned, IncompleteTomographyWarning, ParamOutOfRange
from .ladder import GAP_TOL, completed_family, min_spectral_gap, tomography_family
from .measurement import basis_analyzer, born_probabilities, counts_from_probabilities

SERIES_TOL = 1e-9
EXACT_RESIDUAL_TOL = 1e-8
RANK_TOL = 1e-10


@dataclass(frozen=True)
class TomographySeries:
    n: int
    series: tuple
    exact: bool = True
    shots: int = None
    counts: tuple = None
    complete: bool = False

    def __post_init__(self):
        expected = len(_family(self.n, self.complete).members)
        if len(self.series) != expected:
            raise DimMismatch(f"expected {expected} series for N={self.n}, got {len(self.series)}")
        for k, vec in enumerate(self.series):
            vec = np.asarray(vec)
            if vec.shape != (self.n,):
                raise DimMismatch(f"series {k} has shape {vec.shape}, expected ({self.n},)")
            if vec.min() < 0 or abs(vec.sum() - 1) > SERIES_TOL:
                raise ParamOutOfRange(f"series {k} is not a probability vector")

    def stacked(self):
        return np.concatenate([np.asarray(v, dtype=np.float64) for v in self.series])


def _family(n, complete):
    return completed_family(n) if complete else tomography_family(n)


def _phase_align(vecs):
    out = vecs.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        big = col[np.argmax(np.abs(col))]
        out[:, k] = col * (abs(big) / big)
    return out


@lru_cache(maxsize=None)
def _bases(n, complete):
    bases = []
    for obs in _family(n, complete).members:
        if min_spectral_gap(obs) < GAP_TOL:
            raise IllConditioned(f"family member at N={n} has an eigenvalue gap below {GAP_TOL:.0e}")
        _, vecs = np.linalg.eigh(obs)
        bases.append(_phase_align(vecs))
    return tuple(bases)


def measurement_bases(n, complete=False):
    """Unitaries whose columns are the detector states of each series."""
    return [b.copy() for b in _bases(int(n), bool(complete))]


@lru_cache(maxsize=None)
def _gell_mann(n):
    """Orthonormal (``tr(G_a G_b) = delta``) traceless Hermitian basis, ``N^2 - 1`` elements."""
    mats = []
    for j in range(n):
        for k in range(j + 1, n):
            sym = np.zeros((n, n), dtype=np.complex128)
            sym[j, k] = sym[k, j] = 1 / np.sqrt(2)
            anti = np.zeros((n, n), dtype=np.complex128)
            anti[j, k], anti[k, j] = -1j / np.sqrt(2), 1j / np.sqrt(2)
            mats += [sym, anti]
    for d in range(1, n):
        diag = np.zeros(n)
        diag[:d] = 1
        diag[d] = -d
        mats.append(np.diag(diag / np.sqrt(d * (d + 1))).astype(np.complex128))
    return np.array(mats)


def gell_mann_basis(n):
    return _gell_mann(int(n)).copy()


@lru_cache(maxsize=None)
def _design(n, complete):
    g = _gell_mann(n)
    rows = []
    for basis in _bases(n, complete):
        # <v_k| G_a |v_k> for every outcome k
        rows.append(np.einsum("ik,aij,jk->ka", basis.conj(), g, basis).real)
    return np.vstack(rows)


def design_matrix(n, complete=False):
    """Linear map from Gell-Mann coordinates of ``rho - I/N`` to the stacked series."""
    return _design(int(n), bool(complete)).copy()


def design_rank(n, complete=False, tol=RANK_TOL):
    s = np.linalg.svd(_design(int(n), bool(complete)), compute_uv=False)
    return int(np.sum(s > tol * s[0]))


def design_condition(n, complete=False, tol=RANK_TOL):
    """Ratio of largest to smallest nonzero singular value."""
    s = np.linalg.svd(_design(int(n), bool(complete)), compute_uv=False)
    s = s[s > tol * s[0]]
    return float(s[0] / s[-1])


def simulate_series(rho, exact=True, shots=None, seed=0, complete=False, threads=1):
    """Series of ``rho`` for every family member, exact or sampled.

    Sampled series use an independent stream ``(seed, member index)`` per
    member, so results do not depend on ``threads``.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    n = rho.shape[0]
    probs = [born_probabilities(rho, basis_analyzer(b)) for b in _bases(n, bool(complete))]
    if exact:
        return TomographySeries(n, tuple(probs), True, None, None, bool(complete))
    if shots is None or shots < 1:
        raise ParamOutOfRange("sampled tomography needs shots >= 1")
    counts = tuple(
        counts_from_probabilities(p, shots, seed, (m,), threads) for m, p in enumerate(probs)
    )
    series = tuple(c / shots for c in counts)
    return TomographySeries(n, series, False, int(shots), counts, bool(complete))


def _project_simplex(values):
    """Euclidean projection onto ``{x >= 0, sum x = 1}``."""
    u = np.sort(values)[::-1]
    css = np.cumsum(u) - 1
    idx = np.arange(1, len(u) + 1)
    r = idx[u - css / idx > 0][-1]
    return np.clip(values - css[r - 1] / r, 0, None)


def project_psd(h):
    """Closest unit-trace PSD matrix to a Hermitian ``h`` in Frobenius norm."""
    w, v = np.linalg.eigh((h + h.conj().T) / 2)
    if w.min() >= 0 and abs(w.sum() - 1) < 1e-15:
        return (h + h.conj().T) / 2
    w = _project_simplex(w)
    return (v * w) @ v.conj().T


def linear_estimate(series):
    """Unconstrained least-squares Hermitian unit-trace estimate and its residual norm."""
    n = series.n
    a = _design(n, series.complete)
    b = series.stacked() - 1.0 / n
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.linalg.norm(a @ x - b))
    h = np.eye(n) / n + np.einsum("a,aij->ij", x, _gell_mann(n))
    return h, residual


def default_residual_tol(series):
    if series.exact:
        return EXACT_RESIDUAL_TOL
    return 5.0 * np.sqrt(len(series.series) * series.n / series.shots)


def reconstruct(series, residual_tol=None):
    """Density matrix from a series: least squares, residual check, PSD projection.

    Warns with :class:`IncompleteTomographyWarning` when the design is rank
    deficient; the returned estimate is then the minimum-norm solution, which
    sets every unobserved coordinate to zero.
    """
    if not isinstance(series, TomographySeries):
        raise TypeError("reconstruct expects a TomographySeries")
    n = series.n
    if design_rank(n, series.complete) < n * n - 1:
        warnings.warn(
            f"design rank {design_rank(n, series.complete)} < {n * n - 1}: "
            "the series does not determine the state",
            IncompleteTomographyWarning,
            stacklevel=2,
        )
    h, residual = linear_estimate(series)
    tol = default_residual_tol(series) if residual_tol is None else residual_tol
    if residual > tol:
        raise IllConditioned(f"series residual {residual:.3e} exceeds {tol:.3e}; data inconsistent")
    return project_psd(h)


def qubit_bloch_tomography(p_z, p_x, p_y):
    """Qubit state from the probability of outcome 0 in the z, x and y Pauli bases."""
    for name, p in (("p_z", p_z), ("p_x", p_x), ("p_y", p_y)):
        if not (0.0 <= p <= 1.0):
            raise ParamOutOfRange(f"{name}={p} outside [0, 1]")
    r = np.array([2 * p_x - 1, 2 * p_y - 1, 2 * p_z - 1], dtype=np.float64)
    norm = np.linalg.norm(r)
    if norm > 1:
        r = r / norm
    x, y, z = r
    return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]], dtype=np.complex128)
