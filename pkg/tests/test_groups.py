import numpy as np
import pytest

from lsmtools import groups as G


def test_builtin_orders():
    assert G.builtin("trivial").order == 1
    assert G.builtin("z2xz2").order == 4
    assert G.builtin("z3xz3").order == 9
    assert G.builtin("znxzn(4)").order == 16
    assert G.builtin("z6").order == 6
    with pytest.raises(G.GroupError):
        G.builtin("nope")


@pytest.mark.parametrize("g", [G.trivial_group(), G.z2xz2(), G.z2_time_reversal(),
                               G.zn_x_zn(3), G.make_cyclic(4, -1),
                               G.direct_product(G.make_cyclic(2), G.z2_time_reversal())])
def test_constructors_validate(g):
    assert G.validate(g)


def test_z2xz2_labels():
    g = G.z2xz2()
    a1, a2, a3 = (g.index(s) for s in ("a1", "a2", "a3"))
    assert g.mul(a1, a2) == a3
    assert g.is_abelian() and not g.has_antiunitary()


def test_time_reversal_parity():
    g = G.z2_time_reversal()
    assert list(g.parity) == [1, -1]
    assert g.mul(1, 1) == 0


def test_odd_cyclic_cannot_be_antiunitary():
    with pytest.raises(G.GroupError):
        G.make_cyclic(3, -1)


def test_validate_reports_associativity_witness():
    # Latin square with identity that is not associative
    m = np.array([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3],
                  [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]])
    rep = G.validate(G.GradedGroup(m, np.ones(5)))
    assert not rep and "associativity" in rep.message and len(rep.witness) == 3


def test_validate_reports_parity_failure():
    g = G.make_cyclic(4)
    bad = G.GradedGroup(g.mult, np.array([1, -1, 1, 1]))
    rep = G.validate(bad)
    assert not rep and "homomorphism" in rep.message


def test_roundtrip_dict():
    g = G.direct_product(G.make_cyclic(2), G.z2_time_reversal())
    h = G.GradedGroup.from_dict(g.to_dict())
    assert h.same_table(g) and h.labels == g.labels


def test_from_permutations_s3():
    perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    g = G.from_permutations(perms)
    assert G.validate(g) and not g.is_abelian()
    assert g.element_order(4) == 3
