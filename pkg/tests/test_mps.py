import numpy as np
import pytest
from scipy.stats import unitary_group

from lsmtools.mps import (IndexIdentityError, MPSError, MPSTensor, NotSymmetricError, aklt,
                          dimer_spt, extract_edge_rep, left_right_indices, product_state,
                          right_index, verify_main_identity)
from lsmtools.projective import (representation_group_rep, spin_rep_time_reversal,
                                 spin_rep_z2xz2, tensor, trivial_rep)

from oracles import aklt_edge_kramers_sign, aklt_edge_sign_z2xz2

Z22 = spin_rep_z2xz2(2)
TR = spin_rep_time_reversal(2)
RNG = np.random.default_rng(11)


def spin_one_product():
    return product_state([0, 1, 0])


def test_aklt_is_injective_and_normalized():
    A = aklt()
    assert A.is_injective()
    rho = np.abs(np.linalg.eigvals(A.transfer_matrix())).max()
    assert abs(rho - 1) < 1e-12
    Ac = A.right_canonical().tensors
    assert np.allclose(sum(a @ a.conj().T for a in Ac), np.eye(2))


def test_product_state_trivial():
    e = extract_edge_rep(spin_one_product(), Z22)
    assert e.index().is_zero()
    assert all(np.allclose(op.matrix, 1) for op in e.rep.ops)
    assert left_right_indices(spin_one_product(), TR) == (TR_zero(), TR_zero())


def TR_zero():
    return right_index(spin_one_product(), TR)


@pytest.mark.parametrize("sym", [Z22, TR], ids=["z2xz2", "time_reversal"])
def test_aklt_index_one(sym):
    e = extract_edge_rep(aklt(), sym)
    assert e.index().coords == (1,)
    assert e.max_residual < 1e-8


def test_aklt_against_direct_intertwiner():
    A = aklt().tensors
    sign = aklt_edge_sign_z2xz2(A, [Z22[1].matrix, Z22[2].matrix])
    assert sign == -1 and extract_edge_rep(aklt(), Z22).index().coords == (1,)
    assert aklt_edge_kramers_sign(A, TR[1].matrix) == -1
    e = extract_edge_rep(aklt(), TR)
    V = e.rep[1]
    assert np.allclose((V @ V).matrix, -np.eye(2))


def test_left_right_examples():
    sl, sr = left_right_indices(aklt(), Z22)
    assert sl.coords == (1,) and sr.coords == (1,)
    for k in range(3):
        m, sym = dimer_spt(representation_group_rep(3, k))
        sl, sr = left_right_indices(m, sym)
        assert sr.coords == (k,) and sl.coords == ((-k) % 3,)


def test_main_identity_examples():
    half = spin_rep_z2xz2(1)
    r = verify_main_identity(aklt(), Z22, half)
    assert r.ok and r.prepended_index.is_zero() and r.residual < 1e-8
    r = verify_main_identity(aklt(), Z22, trivial_rep(Z22.group, 2))
    assert r.ok and r.prepended_index == r.chain_index
    r = verify_main_identity(spin_one_product(), Z22, half)
    assert r.ok and r.chain_index.is_zero() and r.prepended_index.coords == (1,)
    r = verify_main_identity(aklt(), TR, spin_rep_time_reversal(1))
    assert r.ok and r.prepended_index.is_zero()


def test_main_identity_all_pairs_with_random_gauge():
    chains = [(aklt(), Z22), (spin_one_product(), Z22), (aklt(), TR), (spin_one_product(), TR)]
    for m, sym in chains:
        make = spin_rep_z2xz2 if sym is Z22 else spin_rep_time_reversal
        for t in (1, 2, 3):
            site = make(t)
            U = unitary_group.rvs(site.dim * m.bond_dim, random_state=RNG)
            r = verify_main_identity(m, sym, site, gauge=U)
            assert r.ok, (t, r)
    m, sym = dimer_spt(representation_group_rep(3, 1))
    for k in range(3):
        r = verify_main_identity(m, sym, representation_group_rep(3, k))
        assert r.ok and r.prepended_index.coords == ((1 + k) % 3,)


def test_gauge_independence():
    for _ in range(5):
        W = RNG.normal(size=(2, 2)) + 1j * RNG.normal(size=(2, 2))
        g = MPSTensor(aklt().gauged(W).tensors)
        assert right_index(g, Z22).coords == (1,)
        assert right_index(g, TR).coords == (1,)


def test_blocking_invariance():
    for sym in (Z22, TR):
        blocked = aklt().blocked(2)
        assert right_index(blocked, tensor(sym, sym)) == right_index(aklt(), sym)
    m, sym = dimer_spt(representation_group_rep(3, 2))
    assert right_index(m.blocked(2), tensor(sym, sym)) == right_index(m, sym)


def test_reflection_relation():
    # AKLT tensors are symmetric up to sign under transposition
    A = aklt()
    for sym in (Z22, TR):
        sl, sr = left_right_indices(A, sym)
        assert sl == sr


def test_errors():
    ghz = MPSTensor(np.array([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]))
    assert not ghz.is_injective()
    with pytest.raises(MPSError):
        extract_edge_rep(ghz, spin_rep_z2xz2(1))
    rnd = MPSTensor(RNG.normal(size=(3, 2, 2)) + 1j * RNG.normal(size=(3, 2, 2)))
    assert rnd.is_injective()
    with pytest.raises(NotSymmetricError):
        extract_edge_rep(rnd, Z22)
    with pytest.raises(MPSError):
        extract_edge_rep(aklt(), spin_rep_z2xz2(1))


def test_index_identity_error_type():
    assert issubclass(IndexIdentityError, AssertionError)


def test_serialization():
    A = aklt()
    B = MPSTensor.from_dict(A.to_dict())
    assert np.allclose(A.tensors, B.tensors)
    doc = A.to_dict()
    assert doc["d"] == 3 and doc["D"] == 2 and len(doc["tensors"][0]) == 4
