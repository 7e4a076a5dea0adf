import warnings

import numpy as np
import pytest

from qpair.errors import DimMismatch, IllConditioned, IncompleteTomographyWarning, ParamOutOfRange
from qpair.ladder import tomography_family
from qpair.states import qubit_pure, random_density_matrix
from qpair.tomography import (
    TomographySeries,
    design_condition,
    design_matrix,
    design_rank,
    gell_mann_basis,
    linear_estimate,
    measurement_bases,
    project_psd,
    qubit_bloch_tomography,
    reconstruct,
    simulate_series,
)


def real_random_state(n, rng):
    g = rng.standard_normal((n, n))
    r = g @ g.T
    return r / np.trace(r)


def quiet_reconstruct(series, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IncompleteTomographyWarning)
        return reconstruct(series, **kw)


def test_gell_mann_orthonormal():
    for n in range(2, 6):
        g = gell_mann_basis(n)
        assert len(g) == n * n - 1
        gram = np.einsum("aij,bji->ab", g, g)
        np.testing.assert_allclose(gram, np.eye(n * n - 1), atol=1e-14)
        np.testing.assert_allclose(np.einsum("aii->a", g), 0, atol=1e-15)


@pytest.mark.parametrize("n", range(2, 7))
def test_bases_are_sorted_eigenbases(n):
    fam = tomography_family(n)
    for obs, u in zip(fam.members, measurement_bases(n)):
        np.testing.assert_allclose(u.conj().T @ u, np.eye(n), atol=1e-12)
        d = u.conj().T @ obs @ u
        w = np.diag(d).real
        assert np.all(np.diff(w) > 0)
        np.testing.assert_allclose(d, np.diag(w), atol=1e-12)
        for k in range(n):
            big = u[np.argmax(np.abs(u[:, k])), k]
            assert big.real > 0 and abs(big.imag) < 1e-15


def test_series_examples():
    s = simulate_series(np.eye(3) / 3)
    for v in s.series:
        np.testing.assert_allclose(v, 1 / 3)
    s = simulate_series(np.diag([1.0, 0.0]))
    # L3 = diag(-1/2, +1/2) in the standard basis, so |0> is the first (lowest) slot
    np.testing.assert_allclose(s.series[0], [1, 0], atol=1e-15)


def test_exact_vs_sampled(rng):
    rho = random_density_matrix(3, rng)
    ex = simulate_series(rho)
    sa = simulate_series(rho, exact=False, shots=10**6, seed=4)
    for a, b in zip(ex.series, sa.series):
        assert np.max(np.abs(a - b)) <= 5e-3
    again = simulate_series(rho, exact=False, shots=10**6, seed=4, threads=3)
    for a, b in zip(sa.counts, again.counts):
        np.testing.assert_array_equal(a, b)


def test_sampled_requires_shots():
    with pytest.raises(ParamOutOfRange):
        simulate_series(np.eye(2) / 2, exact=False)


def test_series_validation():
    with pytest.raises(DimMismatch):
        TomographySeries(2, (np.array([0.5, 0.5]),))
    with pytest.raises(ParamOutOfRange):
        TomographySeries(2, tuple(np.array([0.7, 0.7]) for _ in range(3)))


@pytest.mark.parametrize("n", range(2, 7))
def test_design_rank(n):
    assert design_matrix(n).shape == ((n + 1) * n, n * n - 1)
    # the base family is real symmetric and only sees Re(rho)
    assert design_rank(n) == n * (n + 1) // 2 - 1
    assert design_rank(n, complete=True) == n * n - 1
    assert np.isfinite(design_condition(n, complete=True)) and design_condition(n, complete=True) < 10


@pytest.mark.parametrize("n", range(2, 7))
def test_complete_round_trip(n, rng):
    for _ in range(100):
        rho = random_density_matrix(n, rng)
        est = reconstruct(simulate_series(rho, complete=True))
        assert np.linalg.norm(est - rho) <= 1e-8


@pytest.mark.parametrize("n", range(2, 7))
def test_base_family_recovers_real_states(n, rng):
    for _ in range(20):
        rho = real_random_state(n, rng)
        est = quiet_reconstruct(simulate_series(rho))
        assert np.linalg.norm(est - rho) <= 1e-8


def test_base_family_returns_real_part(rng):
    rho = random_density_matrix(3, rng)
    with pytest.warns(IncompleteTomographyWarning):
        est = reconstruct(simulate_series(rho))
    # minimum-norm solution: Re(rho) is recovered, Im(rho) is set to zero
    np.testing.assert_allclose(est, rho.real, atol=1e-8)


def test_identity_series():
    for n in (2, 4):
        np.testing.assert_allclose(quiet_reconstruct(simulate_series(np.eye(n) / n)), np.eye(n) / n, atol=1e-12)


def test_inconsistent_series_rejected():
    s = simulate_series(qubit_pure(0.3, 0.0))
    bad = TomographySeries(2, (np.array([1.0, 0.0]), np.array([1.0, 0.0]), np.array([0.0, 1.0])))
    assert s.n == bad.n
    with pytest.raises(IllConditioned):
        quiet_reconstruct(bad)


def test_psd_projection_contracts(rng):
    for n in (2, 3, 4):
        for rank in range(1, n + 1):
            for _ in range(20):
                rho = random_density_matrix(n, rng, rank=rank)
                g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
                g = (g + g.conj().T) / 2
                g -= np.trace(g) / n * np.eye(n)
                noisy = rho + 1e-6 * g / np.linalg.norm(g)
                out = project_psd(noisy)
                assert np.linalg.eigvalsh(out).min() >= -1e-15
                assert abs(np.trace(out) - 1) < 1e-12
                assert np.linalg.norm(out - rho) <= np.linalg.norm(noisy - rho) + 1e-15


def test_sampled_error_decreases(rng):
    errs = {}
    for shots in (10**4, 10**6):
        e = []
        for seed in range(20):
            rho = random_density_matrix(2, np.random.default_rng(seed))
            est = reconstruct(simulate_series(rho, exact=False, shots=shots, seed=seed, complete=True))
            e.append(np.linalg.norm(est - rho))
        errs[shots] = np.median(e)
    assert errs[10**6] < errs[10**4]
    assert errs[10**6] < 0.01


def test_sampled_n2_at_1e5(rng):
    errs = []
    for seed in range(40):
        rho = random_density_matrix(2, np.random.default_rng(1000 + seed))
        est = reconstruct(simulate_series(rho, exact=False, shots=10**5, seed=seed, complete=True))
        errs.append(np.linalg.norm(est - rho))
    assert np.quantile(errs, 0.95) < 0.02


def test_linear_estimate_residual_zero_on_exact(rng):
    h, res = linear_estimate(simulate_series(random_density_matrix(4, rng), complete=True))
    assert res < 1e-12
    assert abs(np.trace(h) - 1) < 1e-12


def test_qubit_bloch_examples():
    np.testing.assert_allclose(qubit_bloch_tomography(1, 0.5, 0.5), np.diag([1, 0]))
    np.testing.assert_allclose(qubit_bloch_tomography(0.5, 0.5, 0.5), np.eye(2) / 2)
    np.testing.assert_allclose(qubit_bloch_tomography(0.5, 1, 0.5), 0.5 * np.ones((2, 2)))
    r = qubit_bloch_tomography(1, 1, 1)
    assert abs(np.linalg.eigvalsh(r).min()) < 1e-12
    with pytest.raises(ParamOutOfRange):
        qubit_bloch_tomography(1.2, 0.5, 0.5)


def test_qubit_bloch_matches_pauli_projectors(rng):
    for _ in range(50):
        rho = random_density_matrix(2, rng)
        sx = np.array([[0, 1], [1, 0]])
        sy = np.array([[0, -1j], [1j, 0]])
        sz = np.diag([1, -1])
        p = [np.trace(rho @ (np.eye(2) + s) / 2).real for s in (sz, sx, sy)]
        np.testing.assert_allclose(qubit_bloch_tomography(*p), rho, atol=1e-12)
