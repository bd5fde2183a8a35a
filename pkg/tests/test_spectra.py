import numpy as np
import pytest

from lsmtools import spectra as S
from lsmtools.spectra import (HamiltonianError, Term, build_heisenberg, build_xx, gap_scan,
                              lowest_spectrum, twist_energy, twist_energy_check,
                              twist_expectation_check, twist_identity_error,
                              twist_identity_error_dense, twist_operator)

from oracles import xx_ground_energy, xx_twist_energy


def test_two_site_spectra():
    s = lowest_spectrum(build_heisenberg([1, 1]), 4)
    assert np.allclose(s.eigenvalues, [-0.75, 0.25, 0.25, 0.25], atol=1e-12)
    assert s.multiplicities == [1, 3] and abs(s.gap - 1) < 1e-12
    s = lowest_spectrum(build_heisenberg([2, 2]), 1)
    assert abs(s.eigenvalues[0] + 2) < 1e-12


def test_zero_coupling():
    h = build_heisenberg([1] * 6, 0.0)
    s = lowest_spectrum(h, 5)
    assert np.allclose(s.eigenvalues, 0) and s.multiplicities == [5] and s.gap == 0
    scan = gap_scan(lambda L: build_heisenberg([1] * L, 0.0, "periodic"), [4, 6])
    assert scan.gaps == [0.0, 0.0] and scan.alpha is None


@pytest.mark.parametrize("h", [build_heisenberg([1] * 8, 1.0, "periodic"),
                               build_heisenberg([2] * 6, 1.0, "open"),
                               build_heisenberg([1, 2, 1, 2, 1, 2], [1, 0.5, 1, 0.5, 1]),
                               build_xx([1] * 7)])
def test_blocks_match_dense(h):
    dense = S.dense_spectrum(h)
    blocks = np.sort(np.concatenate([np.linalg.eigvalsh(h.matrix(q).toarray()) for q in h.sectors()
                                     if h.matrix(q).shape[0]]))
    assert np.abs(dense - blocks).max() < 1e-10


def test_sparse_matches_dense(monkeypatch):
    h = build_heisenberg([1] * 8, 1.0, "periodic")
    dense = lowest_spectrum(h, 6, use_blocks=False)
    monkeypatch.setattr(S, "DENSE_MAX", 10)
    sparse = lowest_spectrum(h, 6)
    assert np.abs(dense.eigenvalues - sparse.eigenvalues).max() < 1e-8
    assert sparse.residual < 1e-8


def test_symmetry_checks_on_shipped_models():
    for h in (build_heisenberg([1] * 6, 1.0, "periodic"), build_heisenberg([2] * 5),
              build_xx([1] * 6, 1.0, "periodic"), build_heisenberg([1, 3, 1], [0.3, 0.3])):
        assert S.z2xz2_error(h) <= 1e-12
        assert S.time_reversal_error(h) <= 1e-12
        assert S.u1_error(h) <= 1e-12
    assert S.reflection_error(build_heisenberg([1] * 7), 3) <= 1e-12
    assert S.reflection_error(build_heisenberg([1] * 8, 1.0, "periodic"), 0) <= 1e-12
    assert S.reflection_error(build_heisenberg([1] * 7, [1, 2, 1, 1, 1, 1]), 3) > 0.1


def test_term_validation():
    with pytest.raises(HamiltonianError):
        S.ChainHamiltonian((1, 1), (Term((0, 1), np.array([[0, 1, 0, 0]] + [[0] * 4] * 3)),))
    with pytest.raises(HamiltonianError):
        build_heisenberg([1] * 4, [1, 2])
    with pytest.raises(HamiltonianError):
        build_heisenberg([1] * 22).basis()
    h = build_heisenberg([1] * 3)
    assert h.bound == pytest.approx(0.75) and h.range == 2


def test_spin_one_open_edge_states():
    s = lowest_spectrum(build_heisenberg([2] * 8), 6)
    low = s.eigenvalues[:4]
    assert low[-1] - low[0] < 0.5 * (s.eigenvalues[4] - low[-1])
    assert s.multiplicities[:2] == [1, 3]


def test_gap_scan_small():
    scan = gap_scan(S.heisenberg_family(1), [6, 8, 10])
    assert all(a > b for a, b in zip(scan.gaps, scan.gaps[1:]))
    assert 0.5 < scan.alpha < 1.5


def test_twist_is_diagonal_unitary_with_grid_phases():
    h = build_heisenberg([1] * 9)
    for ell in (1, 2, 3, 4):
        U = twist_operator(h, ell, 4)
        assert U.unitarity_error() < 1e-14
        k = np.angle(U.diagonal) / (np.pi / (2 * ell))
        assert np.abs(k - np.round(k)).max() < 1e-9


def test_twist_single_site_weights():
    h = build_heisenberg([1] * 5)
    U = twist_operator(h, 1, 2).diagonal
    dg = h.digits(np.arange(h.dim))
    m = 0.5 - dg
    expect = np.exp(-1j * np.pi * (1 * m[:, 2] + 2 * m[:, 3]))
    assert np.abs(U - expect).max() < 1e-14


def test_twist_window_checks():
    with pytest.raises(HamiltonianError):
        twist_operator(build_heisenberg([1] * 5), 3, 2)
    with pytest.raises(HamiltonianError):
        twist_operator(build_heisenberg([1] * 6, 1.0, "periodic"), 3, 0)


@pytest.mark.parametrize("L,bc,two_s", [(7, "open", 1), (9, "open", 1), (10, "periodic", 1),
                                        (14, "periodic", 1), (7, "open", 2), (13, "open", 1)])
def test_twist_reflection_identity(L, bc, two_s):
    h = build_heisenberg([two_s] * L, 1.0, bc)
    c = (L - 1) // 2 if bc == "open" else 0
    for ell in range(1, min(c, (L - 1) // 2) + 1 if bc == "open" else (L - 1) // 2 + 1):
        assert twist_identity_error(h, ell, c) <= 1e-12


def test_twist_identity_dense_small():
    for h, c in ((build_heisenberg([1] * 7), 3), (build_heisenberg([2] * 5), 2),
                 (build_heisenberg([1, 2, 1, 2, 1]), 2)):
        for ell in (1, 2):
            assert twist_identity_error_dense(h, ell, c) <= 1e-12


@pytest.mark.parametrize("L,bc,center", [(12, "periodic", 0), (13, "open", 6), (11, "open", 5)])
def test_twist_expectation_vanishes(L, bc, center):
    h = build_heisenberg([1] * L, 1.0, bc)
    r = twist_expectation_check(h, 3, center)
    assert r.half_odd_center and r.ok and abs(r.value) <= 1e-10


def test_twist_expectation_integer_spin_reports_only():
    r = twist_expectation_check(build_heisenberg([2] * 7), 2, 3)
    assert not r.constrained and r.ok


def test_twist_expectation_rejects_non_symmetric():
    h = build_heisenberg([1] * 7)
    up = np.zeros(h.dim)
    up[0] = 1.0
    with pytest.raises(HamiltonianError):
        twist_expectation_check(h, 2, 3, psi=up)
    with pytest.raises(HamiltonianError):
        twist_expectation_check(build_heisenberg([1] * 7, [1, 2, 1, 1, 1, 1]), 2, 3)


def test_twist_energy_zero_when_window_is_decoupled():
    L, c, ell = 11, 5, 3
    J = np.ones(L - 1)
    J[c - ell:c + ell] = 0.0
    h = build_heisenberg([1] * L, J)
    s = lowest_spectrum(h, 1, vectors=True)
    assert abs(twist_energy(h, s.vectors[:, 0], ell, c)) < 1e-12


def test_xx_free_fermion_oracle():
    L = 12
    h = build_xx([1] * L)
    s = lowest_spectrum(h, 2, vectors=True)
    assert s.multiplicities[0] == 1
    assert abs(s.eigenvalues[0] - xx_ground_energy(L)) < 1e-10
    psi = s.vectors[:, 0]
    for ell, c in ((2, 5), (3, 5), (4, 6), (5, 6)):
        th = np.zeros(L)
        for x in range(-ell, ell + 1):
            th[c + x] = (x + ell) / ell * np.pi
        assert abs(twist_energy(h, psi, ell, c) - xx_twist_energy(L, th)) < 1e-8


def test_twist_energy_bounded_and_converging():
    h = build_heisenberg([1] * 14, 1.0, "periodic")
    s = lowest_spectrum(h, 2, vectors=True)
    r = twist_energy_check(h, s.vectors[:, 0], range(2, 7), center=7)
    assert r.variational_ok
    scaled = np.array(r.scaled)
    # l * dE(l) stays below pi^2 * J / 2 * 2 and its increments shrink
    assert scaled.max() < np.pi ** 2 / 2 * 2
    steps = np.diff(scaled)
    assert np.all(np.abs(steps[1:]) < np.abs(steps[:-1]))


def test_twist_energy_rejects_non_u1():
    h = S.ChainHamiltonian((1, 1), (Term((0, 1), np.kron(np.array([[0, 1], [1, 0]]), np.eye(2))),))
    with pytest.raises(HamiltonianError):
        twist_energy_check(h, np.ones(4) / 2, [1], center=0)


def test_hamiltonian_ingestion():
    h = S.hamiltonian_from_dict({"model": "heisenberg", "L": 4, "two_s": 1, "boundary": "periodic"})
    assert h.L == 4 and len(h.terms) == 4
    h2 = S.hamiltonian_from_dict(h.to_dict())
    assert np.allclose(S.dense_spectrum(h), S.dense_spectrum(h2))
    with pytest.raises(HamiltonianError):
        S.hamiltonian_from_dict({"model": "ising", "L": 4})
    with pytest.raises(HamiltonianError):
        S.hamiltonian_from_dict({"terms": []})
