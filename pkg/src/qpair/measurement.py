"""Projective measurement: Born probabilities, state reduction, joint tables, sampling.

An analyzer is a sequence of orthogonal projectors summing to the identity.
Use :func:`basis_analyzer` to get the rank-1 analyzer of a unitary's columns.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import AmbiguousOutcome, DimMismatch, IncompleteAnalyzer, NegativeProbability
from .matcore import as_dims, tensor
from .states import qubit_pure

ANALYZER_TOL = 1e-10
CLIP_TOL = 1e-12
_CHUNK = 1 << 20


def basis_analyzer(basis):
    """Rank-1 projectors onto the columns of a unitary matrix."""
    basis = np.asarray(basis, dtype=np.complex128)
    return [np.outer(basis[:, k], basis[:, k].conj()) for k in range(basis.shape[1])]


def standard_analyzer(n):
    return basis_analyzer(np.eye(n))


def qubit_analyzer(theta, phi):
    """``{P0, P1}`` with ``P0 = |theta, phi><theta, phi|`` and ``P1 = I - P0``."""
    p0 = qubit_pure(theta, phi)
    return [p0, np.eye(2) - p0]


def check_analyzer(projectors, dim=None, tol=ANALYZER_TOL):
    """Validate orthogonality and completeness; returns the projectors as an array."""
    ps = np.asarray(projectors, dtype=np.complex128)
    if ps.ndim != 3 or ps.shape[1] != ps.shape[2]:
        raise IncompleteAnalyzer("analyzer must be a sequence of square matrices")
    n = ps.shape[1]
    if dim is not None and n != dim:
        raise DimMismatch(f"analyzer acts on dimension {n}, state has {dim}")
    if np.max(np.abs(ps.sum(axis=0) - np.eye(n))) > tol:
        raise IncompleteAnalyzer("projectors do not sum to the identity")
    for i in range(len(ps)):
        for k in range(i, len(ps)):
            prod = ps[i] @ ps[k]
            target = ps[i] if i == k else 0
            if np.max(np.abs(prod - target)) > tol:
                raise IncompleteAnalyzer(f"projectors {i} and {k} are not orthogonal idempotents")
    return ps


def _clean_probabilities(p):
    p = np.real_if_close(np.asarray(p), tol=1e6).real.astype(np.float64)
    low = p.min()
    if low < -CLIP_TOL:
        raise NegativeProbability(f"probability {low:.3e} below -{CLIP_TOL:.0e}")
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def born_probabilities(rho, analyzer):
    """``p_k = tr(P_k rho)``; rounding negatives down to -1e-12 are clipped."""
    rho = np.asarray(rho, dtype=np.complex128)
    ps = check_analyzer(analyzer, rho.shape[0])
    return _clean_probabilities(np.einsum("kij,ji->k", ps, rho))


def reduce_general(rho, analyzer):
    """State after the analyzer, before detection: ``sum_k P_k rho P_k``."""
    rho = np.asarray(rho, dtype=np.complex128)
    ps = check_analyzer(analyzer, rho.shape[0])
    return np.einsum("kij,jl,klm->im", ps, rho, ps)


def reduce_qubit(rho, theta, phi):
    """Qubit reduction as white noise plus an analyzer eigenstate.

    Returns ``(state, p)`` with ``p = 2 <theta,phi|rho|theta,phi> - 1`` and
    ``state = (1 - |p|) I/2 + |p| P``, where ``P`` is the analyzer projector
    for ``p >= 0`` and its orthogonal complement otherwise.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (2, 2):
        raise DimMismatch(f"reduce_qubit needs a 2x2 state, got {rho.shape}")
    p0 = qubit_pure(theta, phi)
    p = float(2 * np.real(np.trace(p0 @ rho)) - 1)
    target = p0 if p >= 0 else np.eye(2) - p0
    return (1 - abs(p)) * np.eye(2) / 2 + abs(p) * target, p


def joint_distribution(rho, dims, analyzer_a, analyzer_b):
    """``P[m, n] = tr(rho (P_m (x) Q_n))``, shape ``(len(analyzer_a), len(analyzer_b))``."""
    dims = as_dims(dims)
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (dims.total, dims.total):
        raise DimMismatch(f"state is {rho.shape}, dims {tuple(dims)}")
    pa = check_analyzer(analyzer_a, dims.na)
    pb = check_analyzer(analyzer_b, dims.nb)
    t = rho.reshape(dims.na, dims.nb, dims.na, dims.nb)
    # tr(rho (P (x) Q)) = sum rho[a b, c d] P[c, a] Q[d, b]
    table = np.einsum("abcd,mca,ndb->mn", t, pa, pb)
    flat = _clean_probabilities(table.ravel())
    return flat.reshape(table.shape)


@dataclass
class Conditionals:
    """Marginals and conditional tables of a joint distribution.

    ``a_given_b[n]`` is the distribution of A given B's outcome ``n``, or
    ``None`` when ``P_B(n) = 0`` (and symmetrically for ``b_given_a``).
    """

    marginal_a: np.ndarray
    marginal_b: np.ndarray
    a_given_b: list
    b_given_a: list


def conditional_and_marginals(joint, zero_tol=CLIP_TOL):
    joint = np.asarray(joint, dtype=np.float64)
    ma = joint.sum(axis=1)
    mb = joint.sum(axis=0)
    a_given_b = [joint[:, n] / mb[n] if mb[n] > zero_tol else None for n in range(joint.shape[1])]
    b_given_a = [joint[m, :] / ma[m] if ma[m] > zero_tol else None for m in range(joint.shape[0])]
    return Conditionals(ma, mb, a_given_b, b_given_a)


def _outcome_cdf(p):
    cdf = np.cumsum(p)
    nz = np.flatnonzero(p > 0)
    cdf[nz[-1]:] = 1.0
    return cdf


def counts_from_probabilities(p, shots, seed, stream=(), threads=1):
    """Multinomial counts where shot ``i`` depends only on ``(seed, stream, i)``."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p = np.asarray(p, dtype=np.float64)
    cdf = _outcome_cdf(p)
    key = kernels.derive_key(seed, *stream)
    bounds = [(lo, min(lo + _CHUNK, shots)) for lo in range(0, shots, _CHUNK)]
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: kernels.sample_counts(cdf, key, *b), bounds))
    else:
        parts = [kernels.sample_counts(cdf, key, *b) for b in bounds]
    return np.sum(parts, axis=0)


def _require_rank_one(ps):
    for k, proj in enumerate(ps):
        if abs(np.trace(proj).real - 1) > 1e-8:
            raise AmbiguousOutcome(f"projector {k} has rank {np.trace(proj).real:.3g}")


def sample_counts(rho, analyzer, shots, seed, dims=None, analyzer_b=None, stream=(), threads=1):
    """Seeded detector counts.

    With one analyzer the result is a count vector. With ``dims`` and
    ``analyzer_b`` given, ``analyzer`` acts on A and the result is an
    ``(N_A, N_B)`` table of coincidence counts.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if analyzer_b is None:
        _require_rank_one(check_analyzer(analyzer, rho.shape[0]))
        p = born_probabilities(rho, analyzer)
        return counts_from_probabilities(p, shots, seed, stream, threads)
    if dims is None:
        raise DimMismatch("joint sampling needs the subsystem dims")
    dims = as_dims(dims)
    _require_rank_one(check_analyzer(analyzer, dims.na))
    _require_rank_one(check_analyzer(analyzer_b, dims.nb))
    table = joint_distribution(rho, dims, analyzer, analyzer_b)
    counts = counts_from_probabilities(table.ravel(), shots, seed, stream, threads)
    return counts.reshape(table.shape)


def product_analyzer(analyzer_a, analyzer_b):
    """Analyzer on the composite space made of all ``P_m (x) Q_n``."""
    return [tensor(pa, pb) for pa in analyzer_a for pb in analyzer_b]
