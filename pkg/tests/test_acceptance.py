"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line with its numbers."""
import time
import warnings
from fractions import Fraction

import numpy as np
import pytest

from qpair.classify import ENTANGLED, classify_state, disentanglement_residual, entanglement_entropy, entropy_sweep
from qpair.classify import ppt_min_eigenvalue, von_neumann_entropy
from qpair.coupling import coupled_basis, coupled_pure, local_label, paraqubit_family, paraqutrit_d_family
from qpair.coupling import product_manifold_state
from qpair.errors import IncompleteTomographyWarning
from qpair.ladder import ladder_operators, tomography_family
from qpair.matcore import tensor
from qpair.measurement import basis_analyzer, joint_distribution, qubit_analyzer, reduce_general, reduce_qubit
from qpair.measurement import standard_analyzer
from qpair.states import epr_state, pure_from_vector, random_density_matrix, random_pure_vector, random_unitary
from qpair.tomography import design_rank, reconstruct, simulate_series

h = Fraction(1, 2)
r2, r3 = 2**-0.5, 3**-0.5
s23 = (2 / 3) ** 0.5


def verdict_line(label, ok, elapsed, limit, detail):
    ok_all = ok and elapsed < limit
    status = "PASS" if ok_all else "FAIL"
    print(f"\ncriterion {label}: {status} | {detail} | runtime {elapsed:.3f}s (limit {limit}s)")
    assert ok, detail
    assert elapsed < limit, f"runtime {elapsed:.3f}s exceeds {limit}s"


def h2(x):
    return 0.0 if x in (0, 1) else -x * np.log2(x) - (1 - x) * np.log2(1 - x)


# Explicit published vectors in flat coordinates (A = smaller factor, slow index;
# local index 0 is the top projection).
PUBLISHED = {
    (2, 2): {
        (0, 0): [0, -r2, r2, 0],
        (1, 1): [1, 0, 0, 0],
        (1, 0): [0, r2, r2, 0],
        (1, -1): [0, 0, 0, 1],
    },
    (2, 3): {
        (h, h): [0, r3, 0, -s23, 0, 0],
        (h, -h): [0, 0, -s23, 0, r3, 0],
        (3 * h, 3 * h): [1, 0, 0, 0, 0, 0],
        (3 * h, h): [0, s23, 0, r3, 0, 0],
        (3 * h, -h): [0, 0, r3, 0, s23, 0],
        (3 * h, -3 * h): [0, 0, 0, 0, 0, 1],
    },
}


@pytest.mark.acceptance("1")
def test_criterion_1_cg_tables():
    t0 = time.perf_counter()
    worst = 0.0
    details = []
    for dims, table in PUBLISHED.items():
        basis = coupled_basis(dims)
        for j in sorted({j for j, _ in table}):
            labels = [lab for lab in table if lab[0] == j]
            errs = {
                sign: max(np.max(np.abs(sign * np.array(table[lab]) - basis.vector(*lab).real)) for lab in labels)
                for sign in (1, -1)
            }
            best = min(errs.values())
            worst = max(worst, best)
            details.append(f"{dims} j={j}: {best:.1e}")
    elapsed = time.perf_counter() - t0
    verdict_line("1", worst <= 1e-10, elapsed, 1.0, "max block error " + ", ".join(details))


@pytest.mark.acceptance("2")
def test_criterion_2_entropy_sweep():
    t0 = time.perf_counter()
    rows = entropy_sweep(11)
    err = 0.0
    excess = True
    for r in rows:
        err = max(err, abs(r.s_sys - h2((1 + r.d) / 2)), abs(r.s_a - h2((1 + r.d / 3) / 2)),
                  abs(r.s_b - h2((1 + r.d / 3) / 2)))
        if r.d > 0:
            excess &= r.s_a > r.s_sys
    first, last = rows[0], rows[-1]
    h_two_thirds = -(2 / 3) * np.log2(2 / 3) - (1 / 3) * np.log2(1 / 3)
    ends = max(abs(first.s_sys - 1), abs(first.s_a - 1), abs(first.s_b - 1), abs(last.s_sys),
               abs(last.s_a - h_two_thirds), abs(last.s_a - (np.log2(3) - 2 / 3)))
    ok = len(rows) == 11 and err <= 1e-9 and ends <= 1e-9 and excess
    elapsed = time.perf_counter() - t0
    verdict_line("2", ok, elapsed, 1.0, f"formula err {err:.1e}, endpoint err {ends:.1e}, S_A>S_sys {excess}")


def _simplex_21():
    for idx in np.ndindex(21, 21, 21, 21):
        if sum(idx) == 20:
            yield idx


@pytest.mark.acceptance("3")
def test_criterion_3_paraqubit_disentanglement():
    t0 = time.perf_counter()
    n = mismatches = entangled = 0
    for idx in _simplex_21():
        p_s, p_00, p_11, p_0 = (i / 20 for i in idx)
        fs, f00, f11, f0 = (Fraction(i, 20) for i in idx)
        rho = paraqubit_family(p_s, p_00, p_11, p_0)
        a = classify_state(rho, (2, 2)).verdict == ENTANGLED
        b = ppt_min_eigenvalue(rho, (2, 2)) < -1e-10
        res = disentanglement_residual("paraqubit", (p_s, p_00, p_11, p_0)).residuals[0]
        # sqrt(((p00-p11)/2)^2 + ((p0-ps)/2)^2) > (p00+p11)/2, squared and evaluated exactly
        block = (f00 - f11) ** 2 + (f0 - fs) ** 2 > (f00 + f11) ** 2
        c = res > 1e-10 and block
        n += 1
        entangled += a
        mismatches += not (a == b == c)
    elapsed = time.perf_counter() - t0
    verdict_line("3", mismatches == 0, elapsed, 30.0,
                 f"{n} grid points, {entangled} entangled, {mismatches} disagreements")


@pytest.mark.acceptance("4")
def test_criterion_4_total_correlation():
    t0 = time.perf_counter()
    worst = 0.0
    count = 0
    for dims in [(2, 2), (2, 3)]:
        basis = coupled_basis(dims)
        na, nb = dims
        pa, pb = standard_analyzer(na), standard_analyzer(nb)
        for j, m in basis.labels:
            rho = coupled_pure(dims, j, m)
            expected = np.zeros(dims)
            for ia in range(na):
                for ib in range(nb):
                    m_s, m_l = local_label(na, ia), local_label(nb, ib)
                    if m_s + m_l == m:
                        expected[ia, ib] = basis.cg(j, m, m_s) ** 2
            brute = np.array([[np.trace(rho @ tensor(pa[ia], pb[ib])).real for ib in range(nb)]
                              for ia in range(na)])
            got = joint_distribution(rho, dims, pa, pb)
            worst = max(worst, np.max(np.abs(got - expected)), np.max(np.abs(brute - expected)))
            count += 1
    elapsed = time.perf_counter() - t0
    verdict_line("4", worst <= 1e-10, elapsed, 1.0, f"{count} coupled states, max deviation {worst:.1e}")


@pytest.mark.acceptance("5")
def test_criterion_5_tomography_round_trip():
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    worst = 0.0
    ranks = {}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IncompleteTomographyWarning)
        for n in (2, 3, 4, 5):
            ranks[n] = design_rank(n)
            for _ in range(100):
                rho = random_density_matrix(n, rng)
                worst = max(worst, np.linalg.norm(reconstruct(simulate_series(rho)) - rho))
    elapsed = time.perf_counter() - t0
    ranks_ok = all(ranks[n] == n * n - 1 for n in ranks)
    rank_text = ", ".join(f"N={n}: {r}/{n * n - 1}" for n, r in ranks.items())
    verdict_line("5", worst <= 1e-8 and ranks_ok, elapsed, 30.0,
                 f"max Frobenius error {worst:.3e}, design rank {rank_text}, "
                 f"{len(caught)} incomplete-design warnings")


def _ladder_data(n):
    trip = ladder_operators(n)
    fam = tomography_family(n)
    return trip, fam, (trip.raising - trip.lowering) / 2


@pytest.mark.acceptance("6a")
def test_criterion_6a_l3_spectrum():
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(2, 9):
        trip = ladder_operators(n)
        l3 = (trip.raising @ trip.lowering - trip.lowering @ trip.raising) / 2
        vals = np.diag(l3).real
        worst = max(worst, np.max(np.abs(l3 - np.diag(vals))), np.max(np.abs(np.diff(vals) - 1)),
                    np.max(np.abs(vals + vals[::-1])))
    elapsed = time.perf_counter() - t0
    verdict_line("6a", worst <= 1e-10, elapsed, 1.0, f"N=2..8 diagonal, unit-spaced, symmetric; max dev {worst:.1e}")


@pytest.mark.acceptance("6b")
def test_criterion_6b_family_commutators():
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(2, 9):
        trip, fam, y = _ladder_data(n)
        for mi, om in enumerate(fam.members):
            for ni, on in enumerate(fam.members):
                target = np.sin((mi - ni) * np.pi / (n + 1)) * y
                worst = max(worst, np.max(np.abs(om @ on - on @ om - target)))
    elapsed = time.perf_counter() - t0
    verdict_line("6b", worst <= 1e-10, elapsed, 1.0,
                 f"[O_m, O_n] vs sin(phi^(m-n))(L+ - L-)/2 for N=2..8: max dev {worst:.3e}")


@pytest.mark.acceptance("7")
def test_criterion_7_reduction():
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    worst_trace = worst_psd = worst_idem = worst_entropy = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        rho = random_density_matrix(n, rng, rank=int(rng.integers(1, n + 1)))
        an = basis_analyzer(random_unitary(n, rng))
        out = reduce_general(rho, an)
        worst_trace = max(worst_trace, abs(np.trace(out) - 1))
        worst_psd = max(worst_psd, -np.linalg.eigvalsh(out).min())
        worst_idem = max(worst_idem, np.max(np.abs(reduce_general(out, an) - out)))
        worst_entropy = max(worst_entropy, von_neumann_entropy(rho) - von_neumann_entropy(out))
    worst_qubit = 0.0
    for _ in range(1000):
        rho = random_density_matrix(2, rng, rank=int(rng.integers(1, 3)))
        theta, phi = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
        state, _ = reduce_qubit(rho, theta, phi)
        worst_qubit = max(worst_qubit, np.max(np.abs(state - reduce_general(rho, qubit_analyzer(theta, phi)))))
    ok = max(worst_trace, worst_psd, worst_idem, worst_entropy) <= 1e-9 and worst_qubit <= 1e-10
    elapsed = time.perf_counter() - t0
    verdict_line("7", ok, elapsed, 10.0,
                 f"trace {worst_trace:.1e}, psd {worst_psd:.1e}, idempotence {worst_idem:.1e}, "
                 f"entropy drop {worst_entropy:.1e}, qubit vs general {worst_qubit:.1e}")


@pytest.mark.acceptance("8")
def test_criterion_8_product_manifold():
    t0 = time.perf_counter()
    ks = [0j] + [r * np.exp(1j * a) for r in (0.1, 0.3, 0.7, 1.0, 1.5, 3.0, 10.0)
                 for a in np.linspace(0, 2 * np.pi, 7, endpoint=False)]
    assert len(ks) == 50
    worst_entropy = worst_overlap = 0.0
    for dims in [(2, 2), (2, 3)]:
        inf = product_manifold_state(dims, at_infinity=True)
        worst_entropy = max(worst_entropy, entanglement_entropy(inf, dims))
        for k in ks:
            v = product_manifold_state(dims, k)
            worst_entropy = max(worst_entropy, entanglement_entropy(v, dims))
            w = inf if k == 0 else product_manifold_state(dims, -1 / np.conj(k))
            worst_overlap = max(worst_overlap, abs(np.vdot(v, w)))
    ok = worst_entropy < 1e-8 and worst_overlap <= 1e-10
    elapsed = time.perf_counter() - t0
    verdict_line("8", ok, elapsed, 1.0,
                 f"50 k values + infinity: max entropy {worst_entropy:.1e}, max antipodal overlap {worst_overlap:.1e}")


def _representatives(rng):
    reps = []
    for dims in [(2, 2), (2, 3)] * 3:
        v = np.kron(random_pure_vector(dims[0], rng), random_pure_vector(dims[1], rng))
        reps.append((np.outer(v, v.conj()), dims))
    for phi in (0, np.pi / 2, np.pi, 3 * np.pi / 2):
        reps.append((pure_from_vector(epr_state(phi)), (2, 2)))
    for p, p00 in [(0.3, 0.2), (0.25, 0.25), (0.1, 0.4), (0.4, 0.1), (0.2, 0.5), (0.45, 0.05), (0.0, 0.6)]:
        reps.append((paraqubit_family(p, p00, 1 - 2 * p - p00, p), (2, 2)))
    for d in (0.0, 0.5, 1.0):
        reps.append((paraqutrit_d_family(d), (2, 3)))
    return reps


@pytest.mark.acceptance("9")
def test_criterion_9_local_unitary_invariance():
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    reps = _representatives(rng)
    changes = 0
    seen = set()
    for rho, dims in reps:
        v0 = classify_state(rho, dims).verdict
        seen.add(v0)
        for _ in range(200):
            g = np.kron(random_unitary(dims[0], rng), random_unitary(dims[1], rng))
            changes += classify_state(g @ rho @ g.conj().T, dims).verdict != v0
    elapsed = time.perf_counter() - t0
    verdict_line("9", changes == 0 and len(reps) == 20, elapsed, 10.0,
                 f"{len(reps)} states x 200 conjugations, verdicts {sorted(seen)}, {changes} changes")


@pytest.mark.acceptance("10")
def test_criterion_10_sampled_tomography():
    t0 = time.perf_counter()
    medians = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IncompleteTomographyWarning)
        for shots in (10**4, 10**6):
            errs = []
            for seed in range(50):
                rho = random_density_matrix(2, np.random.default_rng(10_000 + seed))
                est = reconstruct(simulate_series(rho, exact=False, shots=shots, seed=seed))
                errs.append(np.linalg.norm(est - rho))
            medians[shots] = float(np.median(errs))
    ok = medians[10**6] < 0.01 and medians[10**6] < medians[10**4]
    elapsed = time.perf_counter() - t0
    verdict_line("10", ok, elapsed, 60.0,
                 f"median Frobenius error {medians[10**6]:.4f} at 1e6 shots, {medians[10**4]:.4f} at 1e4 shots")
