"""Entropies, spectral degeneracy and the three-type classification of pair states.

The verdict rule is applied in order:

1. ``||rho - rho_A (x) rho_B||_F <= tol``: Independent.
2. Partial transpose nonnegative (``>= -tol``) at 2x2 or 2x3: SeparableMix.
3. Otherwise at 2x2 or 2x3: Entangled.
4. Larger dimensions: Undecided, with the PPT evidence attached.

PPT is necessary and sufficient for separability only at 2x2 and 2x3, which
is why nothing beyond those sizes gets a definite separability verdict.
"""
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .coupling import coupled_basis, half, paraqubit_family, paraqutrit_d_family
from .errors import DimMismatch, NotNormalized, ParamOutOfRange, WeightInvalid
from .matcore import as_dims, eigvals_hermitian, partial_trace, partial_transpose, tensor

ENTROPY_CUTOFF = 1e-12
ZERO_THRESHOLD = 1e-10
CLASSIFY_TOL = 1e-9
WEIGHT_TOL = 1e-10
DECISIVE_DIMS = {(2, 2), (2, 3)}

INDEPENDENT = "Independent"
SEPARABLE_MIX = "SeparableMix"
ENTANGLED = "Entangled"
UNDECIDED = "Undecided"


def _entropy_of(values):
    p = np.asarray(values, dtype=np.float64)
    p = p[p > ENTROPY_CUTOFF]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def binary_entropy(x):
    return _entropy_of([x, 1.0 - x])


def von_neumann_entropy(rho):
    """``-sum lambda log2 lambda`` in bits, eigenvalues under 1e-12 dropped."""
    return _entropy_of(eigvals_hermitian(rho))


def schmidt_coefficients(psi, dims):
    dims = as_dims(dims)
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    if psi.size != dims.total:
        raise DimMismatch(f"vector has {psi.size} entries, dims {tuple(dims)} need {dims.total}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1) > 1e-6:
        raise NotNormalized(f"|psi| = {norm:.12g}")
    return np.linalg.svd(psi.reshape(dims.na, dims.nb) / norm, compute_uv=False)


def entanglement_entropy(psi, dims):
    """Entropy of either marginal of a pure pair state (Schmidt spectrum)."""
    return _entropy_of(schmidt_coefficients(psi, dims) ** 2)


@dataclass(frozen=True)
class DegeneracyProfile:
    clusters: tuple
    zero_rank: int
    tol: float

    def multiplicities(self):
        return [m for _, m in self.clusters]

    def to_dict(self):
        return {
            "clusters": [[float(v), int(m)] for v, m in self.clusters],
            "zero_rank": self.zero_rank,
            "tol": self.tol,
        }


def degeneracy_profile(rho, tol=None):
    """Single-linkage clustering of the (descending) spectrum.

    Consecutive eigenvalues closer than ``tol`` share a cluster; each cluster
    is represented by its mean. Default ``tol`` is ``1e-9 * max(1, lambda_max)``.
    """
    w = eigvals_hermitian(rho)
    if tol is None:
        tol = 1e-9 * max(1.0, float(w[0]))
    clusters = []
    start = 0
    for k in range(1, len(w) + 1):
        if k == len(w) or w[k - 1] - w[k] > tol:
            clusters.append((float(np.mean(w[start:k])), k - start))
            start = k
    zero_rank = int(np.sum(np.abs(w) <= ZERO_THRESHOLD))
    return DegeneracyProfile(tuple(clusters), zero_rank, float(tol))


def ppt_min_eigenvalue(rho, dims):
    """Smallest eigenvalue of the partial transpose on B."""
    return float(eigvals_hermitian(partial_transpose(rho, dims, on="B"))[-1])


def product_distance(rho, dims):
    rho_a = partial_trace(rho, dims, over="B")
    rho_b = partial_trace(rho, dims, over="A")
    return float(np.linalg.norm(np.asarray(rho) - tensor(rho_a, rho_b)))


@dataclass(frozen=True)
class Classification:
    verdict: str
    dims: tuple
    product_distance: float
    ppt_min_eigenvalue: float
    degeneracy: DegeneracyProfile
    s_sys: float
    s_a: float
    s_b: float
    tol: float = CLASSIFY_TOL
    decisive: bool = field(default=True)

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "dims": list(self.dims),
            "decisive": self.decisive,
            "tol": self.tol,
            "evidence": {
                "product_distance": self.product_distance,
                "ppt_min_eigenvalue": self.ppt_min_eigenvalue,
                "degeneracy": self.degeneracy.to_dict(),
                "S_sys": self.s_sys,
                "S_A": self.s_a,
                "S_B": self.s_b,
            },
        }


def classify_state(rho, dims, tol=CLASSIFY_TOL):
    dims = as_dims(dims)
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (dims.total, dims.total):
        raise DimMismatch(f"state is {rho.shape}, dims {tuple(dims)}")
    rho_a = partial_trace(rho, dims, over="B")
    rho_b = partial_trace(rho, dims, over="A")
    dist = float(np.linalg.norm(rho - tensor(rho_a, rho_b)))
    ppt = ppt_min_eigenvalue(rho, dims)
    decisive = tuple(sorted(dims)) in DECISIVE_DIMS
    if dist <= tol:
        verdict = INDEPENDENT
    elif not decisive:
        verdict = UNDECIDED
    elif ppt >= -tol:
        verdict = SEPARABLE_MIX
    else:
        verdict = ENTANGLED
    return Classification(
        verdict,
        tuple(dims),
        dist,
        ppt,
        degeneracy_profile(rho),
        von_neumann_entropy(rho),
        von_neumann_entropy(rho_a),
        von_neumann_entropy(rho_b),
        tol,
        decisive or verdict == INDEPENDENT,
    )


class ResidualReport(NamedTuple):
    family: str
    residuals: tuple

    @property
    def disentangled(self):
        return all(r <= WEIGHT_TOL for r in self.residuals)


def _check_weights(values):
    values = [float(v) for v in values]
    if min(values) < -WEIGHT_TOL or abs(sum(values) - 1) > WEIGHT_TOL:
        raise WeightInvalid(f"weights {values} must be nonnegative and sum to 1")


def disentanglement_residual(family, params):
    """Size of the interference terms that separate a family member from a diagonal mix.

    ``paraqubit``: ``params = (p_s, p_00, p_11, p_0)``, residual ``|p_0 - p_s| / 2``.
    ``paraqutrit``: ``params`` maps ``(j, m)`` to weights of the 2x3 coupled
    basis; residuals ``(sqrt2/3)|p(3/2,+1/2) - p(1/2,+1/2)|`` and the same at
    ``m = -1/2``.
    ``paraqutrit-d``: ``params = d``, residual ``(sqrt2/3)|d|``.
    """
    c = np.sqrt(2) / 3
    if family == "paraqubit":
        p_s, p_00, p_11, p_0 = params
        _check_weights(params)
        return ResidualReport(family, (abs(p_0 - p_s) / 2,))
    if family == "paraqutrit":
        weights = {(half(j), half(m)): float(p) for (j, m), p in dict(params).items()}
        labels = set(coupled_basis((2, 3)).labels)
        unknown = set(weights) - labels
        if unknown:
            raise WeightInvalid(f"labels {sorted(unknown)} are not in the 2x3 coupled basis")
        _check_weights(list(weights.values()) or [0.0])
        h, q = half("1/2"), half("3/2")

        def w(j, m):
            return weights.get((j, m), 0.0)

        return ResidualReport(family, (c * abs(w(q, h) - w(h, h)), c * abs(w(q, -h) - w(h, -h))))
    if family == "paraqutrit-d":
        d = float(params[0] if np.ndim(params) else params)
        if abs(d) > 1:
            raise ParamOutOfRange(f"d={d} outside [-1, 1]")
        return ResidualReport(family, (c * abs(d),))
    raise ValueError(f"unknown family {family!r}")


class SweepRow(NamedTuple):
    d: float
    s_sys: float
    s_a: float
    s_b: float


def entropy_sweep(steps, family="paraqutrit-d"):
    """Entropies of the d-family on ``steps`` evenly spaced ``d`` in [0, 1]."""
    if family != "paraqutrit-d":
        raise ValueError(f"entropy sweep is defined for paraqutrit-d only, got {family!r}")
    if int(steps) != steps or steps < 2:
        raise ParamOutOfRange(f"steps={steps} must be an integer >= 2")
    rows = []
    for d in np.linspace(0.0, 1.0, int(steps)):
        rho = paraqutrit_d_family(float(d))
        rows.append(
            SweepRow(
                float(d),
                von_neumann_entropy(rho),
                von_neumann_entropy(partial_trace(rho, (2, 3), over="B")),
                von_neumann_entropy(partial_trace(rho, (2, 3), over="A")),
            )
        )
    return rows


def paraqubit_classification(p_s, p_00, p_11, p_0, tol=CLASSIFY_TOL):
    return classify_state(paraqubit_family(p_s, p_00, p_11, p_0), (2, 2), tol)
