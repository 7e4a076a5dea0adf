"""Clebsch-Gordan coupling of a bipartite space into irreducible blocks.

Subsystem A (dimension ``na = 2s + 1``) is the smaller one and B
(``nb = 2l + 1``) the larger. Local basis index ``i`` carries the projection
``m = spin - i``, so index 0 is the top state ``|+spin>``. Coupled vectors are

    |j, m> = sum_{m_s} C(j, m; m_s) |m_s>_A (x) |m - m_s>_B

with ``C(j, m; m_s) = <l, m - m_s; s, m_s | j, m>`` in the Condon-Shortley
phase convention. Half-integer labels may be given as ints, floats,
``Fraction`` or strings such as ``"3/2"``.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, sqrt

import numpy as np

from .errors import DimOrder, InvalidLabels, ParamOutOfRange, UnsupportedDims, WeightInvalid
from .matcore import as_dims

WEIGHT_TOL = 1e-10


def half(x):
    """Parse a half-integer label into a ``Fraction``."""
    f = Fraction(x) if not isinstance(x, float) else Fraction(x).limit_denominator(64)
    if (2 * f).denominator != 1:
        raise InvalidLabels(f"{x!r} is not a half-integer")
    return f


def _fmt(f):
    return str(f) if f.denominator != 1 else str(f.numerator)


@lru_cache(maxsize=None)
def _three_j_doubled(tj1, tj2, tj3, tm1, tm2, tm3):
    """Racah closed form on doubled labels, summed in exact rationals."""
    if tm1 + tm2 + tm3 != 0:
        return 0.0
    a = (tj1 + tj2 - tj3) // 2
    b = (tj1 - tj2 + tj3) // 2
    c = (-tj1 + tj2 + tj3) // 2
    big = (tj1 + tj2 + tj3) // 2 + 1
    j1p, j1m = (tj1 + tm1) // 2, (tj1 - tm1) // 2
    j2p, j2m = (tj2 + tm2) // 2, (tj2 - tm2) // 2
    j3p, j3m = (tj3 + tm3) // 2, (tj3 - tm3) // 2
    # t bounds keep every factorial argument nonnegative
    x1 = (tj3 - tj2 + tm1) // 2
    x2 = (tj3 - tj1 - tm2) // 2
    tmin = max(0, -x1, -x2)
    tmax = min(a, j1m, j2p)
    total = Fraction(0)
    for t in range(tmin, tmax + 1):
        den = (
            factorial(t)
            * factorial(x1 + t)
            * factorial(x2 + t)
            * factorial(a - t)
            * factorial(j1m - t)
            * factorial(j2p - t)
        )
        total += Fraction((-1) ** t, den)
    if total == 0:
        return 0.0
    pref = Fraction(
        factorial(a) * factorial(b) * factorial(c)
        * factorial(j1p) * factorial(j1m) * factorial(j2p)
        * factorial(j2m) * factorial(j3p) * factorial(j3m),
        factorial(big),
    )
    phase = -1 if ((tj1 - tj2 - tm3) // 2) % 2 else 1
    sign = 1 if total > 0 else -1
    return phase * sign * sqrt(total * total * pref)


def three_j(j1, j2, j3, m1, m2, m3):
    """Wigner 3j symbol; zero when the bottom row does not sum to zero."""
    lab = [half(x) for x in (j1, j2, j3, m1, m2, m3)]
    tj1, tj2, tj3, tm1, tm2, tm3 = (int(2 * x) for x in lab)
    if min(tj1, tj2, tj3) < 0 or not (abs(tj1 - tj2) <= tj3 <= tj1 + tj2):
        raise InvalidLabels(f"triangle condition fails for ({j1}, {j2}, {j3})")
    if (tj1 + tj2 + tj3) % 2:
        raise InvalidLabels("j1 + j2 + j3 must be an integer")
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tj3, tm3)):
        if abs(tm) > tj or (tj - tm) % 2:
            raise InvalidLabels(f"projection {tm / 2} incompatible with spin {tj / 2}")
    return _three_j_doubled(tj1, tj2, tj3, tm1, tm2, tm3)


def clebsch_gordan(l, s, j, m, m_s):
    """``C(j, m; m_s) = <l, m - m_s; s, m_s | j, m>``.

    Built as ``(-1)^(l - s + m) sqrt(2j + 1) (l s j; m - m_s, m_s, -m)``.
    Returns 0 when ``|m - m_s| > l``.
    """
    l, s, j, m, m_s = (half(x) for x in (l, s, j, m, m_s))
    if s < 0 or l < 0:
        raise InvalidLabels("spins must be nonnegative")
    if not (abs(l - s) <= j <= l + s) or (l + s - j).denominator != 1:
        raise InvalidLabels(f"j={_fmt(j)} outside {_fmt(abs(l - s))}..{_fmt(l + s)}")
    if abs(m_s) > s or (s - m_s).denominator != 1:
        raise InvalidLabels(f"m_s={_fmt(m_s)} invalid for s={_fmt(s)}")
    if abs(m) > j or (j - m).denominator != 1:
        raise InvalidLabels(f"m={_fmt(m)} invalid for j={_fmt(j)}")
    m_l = m - m_s
    if abs(m_l) > l:
        return 0.0
    phase = -1 if int(l - s + m) % 2 else 1
    return phase * sqrt(float(2 * j + 1)) * three_j(l, s, j, m_l, m_s, -m)


def local_index(dim, m):
    """Basis index of projection ``m`` in a ``dim``-dimensional subsystem."""
    spin = Fraction(dim - 1, 2)
    m = half(m)
    if abs(m) > spin or (spin - m).denominator != 1:
        raise InvalidLabels(f"m={_fmt(m)} invalid in dimension {dim}")
    return int(spin - m)


def local_label(dim, index):
    return Fraction(dim - 1, 2) - index


@dataclass(frozen=True)
class CoupledBasis:
    """Coupled basis of a bipartite space.

    ``U`` holds the coupled vectors as columns in induced coordinates, so
    ``U.conj().T @ psi`` gives coupled coordinates of an induced vector.
    Columns run over blocks ``j = l - s .. l + s`` and, inside a block, over
    ``m = j, j - 1, ..., -j``.
    """

    na: int
    nb: int
    l: Fraction
    s: Fraction
    labels: tuple
    U: np.ndarray
    _pos: dict = field(repr=False, compare=False, default_factory=dict)

    @property
    def blocks(self):
        js = sorted({j for j, _ in self.labels})
        return [(j, int(2 * j + 1)) for j in js]

    def index(self, j, m):
        key = (half(j), half(m))
        try:
            return self._pos[key]
        except KeyError:
            raise InvalidLabels(f"no coupled state |{_fmt(key[0])}, {_fmt(key[1])}>") from None

    def vector(self, j, m):
        return self.U[:, self.index(j, m)].copy()

    def cg(self, j, m, m_s):
        return clebsch_gordan(self.l, self.s, j, m, m_s)


@lru_cache(maxsize=32)
def _coupled_basis(na, nb):
    l = Fraction(nb - 1, 2)
    s = Fraction(na - 1, 2)
    labels = []
    cols = []
    j = l - s
    while j <= l + s:
        m = j
        while m >= -j:
            col = np.zeros(na * nb)
            for ia in range(na):
                m_s = local_label(na, ia)
                m_l = m - m_s
                if abs(m_l) <= l:
                    col[ia * nb + local_index(nb, m_l)] = clebsch_gordan(l, s, j, m, m_s)
            labels.append((j, m))
            cols.append(col)
            m -= 1
        j += 1
    u = np.array(cols).T.astype(np.complex128)
    u.setflags(write=False)
    pos = {lab: i for i, lab in enumerate(labels)}
    return CoupledBasis(na, nb, l, s, tuple(labels), u, pos)


def coupled_basis(dims):
    dims = as_dims(dims)
    if dims.na > dims.nb:
        raise DimOrder(f"need N_A <= N_B, got {tuple(dims)}; swap the subsystems")
    if dims.na < 1:
        raise InvalidLabels("subsystem dimensions must be positive")
    return _coupled_basis(dims.na, dims.nb)


def coupled_pure(dims, j, m):
    """Projector onto the coupled basis vector ``|j, m>``."""
    v = coupled_basis(dims).vector(j, m)
    return np.outer(v, v.conj())


def _normalize_weights(basis, weights):
    items = weights.items() if hasattr(weights, "items") else weights
    out = {}
    for (j, m), p in items:
        p = float(p)
        if not np.isfinite(p) or p < -WEIGHT_TOL:
            raise WeightInvalid(f"weight {p} for |{j}, {m}> is negative")
        key = basis.labels[basis.index(j, m)]
        out[key] = out.get(key, 0.0) + max(p, 0.0)
    total = sum(out.values())
    if abs(total - 1) > WEIGHT_TOL:
        raise WeightInvalid(f"weights sum to {total!r}, not 1")
    return out


def coupled_mixture(dims, weights):
    """``sum p_{j,m} |j, m><j, m|`` for a mapping ``{(j, m): p}``."""
    basis = coupled_basis(dims)
    w = _normalize_weights(basis, weights)
    p = np.zeros(len(basis.labels))
    for key, val in w.items():
        p[basis.index(*key)] = val
    return (basis.U * p) @ basis.U.conj().T


def joint_from_weights(dims, weights):
    """Induced-basis detection table of a coupled-diagonal state, from CG data alone.

    ``P[a, b] = sum_j p_{j, m_a + m_b} C(j, m_a + m_b; m_a)^2`` with ``m_a``
    the projection of A's outcome and ``m_b`` that of B.
    """
    basis = coupled_basis(dims)
    w = _normalize_weights(basis, weights)
    table = np.zeros((basis.na, basis.nb))
    for ia in range(basis.na):
        m_s = local_label(basis.na, ia)
        for ib in range(basis.nb):
            m = m_s + local_label(basis.nb, ib)
            for (j, mm), p in w.items():
                if mm == m:
                    table[ia, ib] += p * basis.cg(j, m, m_s) ** 2
    return table


def product_manifold_state(dims, k=0.0, at_infinity=False):
    """Product state inside the top block, parametrized by a complex ``k``.

    For 2x2 the triplet amplitudes on ``|1,-1>, |1,0>, |1,1>`` are
    ``(k^2 c, sqrt(2) k c, c)`` with ``c = 1/(1 + |k|^2)``; for 2x3 the quartet
    amplitudes on ``|3/2,3/2>, .., |3/2,-3/2>`` are
    ``(k^3 d, sqrt(3) k^2 d, sqrt(3) k d, d)`` with ``d = (1 + |k|^2)^(-3/2)``.
    ``at_infinity`` returns the ``k -> infinity`` limit, the opposite
    stretched state.
    """
    dims = as_dims(dims)
    basis = coupled_basis(dims)
    k = complex(k)
    if tuple(dims) == (2, 2):
        labels = [(1, -1), (1, 0), (1, 1)]
        if at_infinity:
            amps = [1.0, 0.0, 0.0]
        else:
            c = 1.0 / (1.0 + abs(k) ** 2)
            amps = [k * k * c, sqrt(2) * k * c, c]
    elif tuple(dims) == (2, 3):
        h = Fraction(1, 2)
        labels = [(3 * h, 3 * h), (3 * h, h), (3 * h, -h), (3 * h, -3 * h)]
        if at_infinity:
            amps = [1.0, 0.0, 0.0, 0.0]
        else:
            d = (1.0 + abs(k) ** 2) ** -1.5
            amps = [k ** 3 * d, sqrt(3) * k * k * d, sqrt(3) * k * d, d]
    else:
        raise UnsupportedDims(f"closed-form product manifold only for 2x2 and 2x3, got {tuple(dims)}")
    vec = np.zeros(dims.total, dtype=np.complex128)
    for lab, amp in zip(labels, amps):
        vec += amp * basis.vector(*lab)
    return vec


def paraqubit_family(p_s, p_00, p_11, p_0):
    """Singlet weight ``p_s``, ``|00>`` and ``|11>`` weights, entangled-triplet weight ``p_0``.

    In the induced basis the only coherence is ``(p_0 - p_s)/2`` between
    ``|01>`` and ``|10>``.
    """
    return coupled_mixture((2, 2), {(0, 0): p_s, (1, 1): p_00, (1, -1): p_11, (1, 0): p_0})


def paraqutrit_d_family(d):
    """``(1+d)/2 |3/2,1/2><..| + (1-d)/2 |1/2,1/2><..|`` on the 2x3 system."""
    if not (-1.0 <= d <= 1.0):
        raise ParamOutOfRange(f"d={d} outside [-1, 1]")
    h = Fraction(1, 2)
    return coupled_mixture((2, 3), {(3 * h, h): (1 + d) / 2, (h, h): (1 - d) / 2})
