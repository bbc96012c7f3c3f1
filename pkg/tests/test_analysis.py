import numpy as np
import pytest

from qtensor import analysis as an
from qtensor.groups import group_from_spec
from qtensor.models import realized
from qtensor.perm import PermGroup


def regular(spec):
    return an.regular_perm_group(group_from_spec(spec))


def test_close_subgroup_basics():
    g = regular("dihedral:4")
    assert an.close_subgroup(g, []).order == 1
    s = an.whole(g)
    assert s.order == 8
    X = s.elements
    # closed under products
    for a in X:
        assert s.contains_all(np.array([g.mul(a, b) for b in X]))


def test_budget():
    g = regular("cyclic:16")
    h = an.whole(g, budget=4)
    assert not h.explicit and h.order == 16
    with pytest.raises(an.BudgetExceeded):
        h.contains(g.gens[0])


def test_invariants_and_structure():
    assert an.abelian_invariants(an.whole(regular("abelian:[2,2,2]"))) == (2, 2, 2)
    assert an.abelian_invariants(an.whole(regular("abelian:[3,3]"))) == (3, 3)
    assert an.abelian_invariants(an.whole(regular("cyclic:1"))) == ()
    assert an.recognize_structure(an.whole(regular("cyclic:4"))) == "cyclic:4"
    assert an.recognize_structure(an.whole(regular("dihedral:5"))) == "dihedral:5"
    assert an.recognize_structure(an.whole(regular("quaternion:8"))) == "quaternion:8"
    assert an.recognize_structure(an.whole(regular("cyclic:1"))) == "trivial"
    with pytest.raises(an.NotAbelianError):
        an.abelian_invariants(an.whole(regular("dihedral:3")))


@pytest.mark.parametrize("spec", ["cyclic:12", "abelian:[2,2,2]", "abelian:[2,2]", "abelian:[3,3]"])
def test_invariant_chain(spec):
    inv = an.abelian_invariants(an.whole(regular(spec)))
    assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
    assert int(np.prod(inv)) == group_from_spec(spec).order


def test_series_and_center():
    s = an.whole(regular("dihedral:8"))
    assert an.nilpotency_class(s) == 3
    assert an.derived_length(s) == 2
    assert an.center(s).order == 2
    assert an.nilpotency_class(an.whole(regular("dihedral:3"))) is None
    assert [x.order for x in an.series(s, "derived")] == [16, 4, 1]
    with pytest.raises(ValueError):
        an.series(s, "bogus")


def test_exponent():
    assert an.whole(regular("quaternion:16")).exponent() == 8
    assert an.whole(regular("modular:16")).exponent() == 8


def test_hom_kernel():
    g = regular("dihedral:4")
    ident = an.GroupHom(g, g, list(g.gens))
    assert an.hom_kernel(ident).order == 1
    target = regular("cyclic:2")
    r_img, s_img = target.identity(), target.gens[0]
    h = an.GroupHom(g, target, [r_img, s_img])
    assert an.hom_kernel(h).order == 4
    c4 = regular("cyclic:4")
    with pytest.raises(ValueError):
        an.GroupHom(g, c4, [c4.identity(), c4.gens[0]])    # s^2 would map to x^2


def test_rho_kernel_order():
    # ker(rho: nu^q(G) -> G) has order |nu^q(G)| / |G|
    r = realized("dihedral:3", 3)
    w = r.whole()
    L = r.L
    target = an.regular_perm_group(L)
    gens, imgs = [], []
    for i, e in enumerate(r.eta.rho_images()):
        gens.append(r.rep.gens[i])
        imgs.append(an.table_element(L, e))
    src = PermGroup(gens)
    h = an.GroupHom(src, target, imgs)
    assert an.hom_kernel(h).order == w.order // L.order


@pytest.mark.slow
def test_upsilon_examples():
    u = realized("dihedral:4", 4).subgroup("Upsilon")
    assert u.order == 128
    assert an.abelian_invariants(u) == (2, 2, 2, 2, 2, 4)
    u = realized("quaternion:8", 4).upsilon.upsilon_part()
    assert u.order == 256
    assert an.recognize_structure(u) == "abelian:[2,2,2,2,4,4]"
    c6 = realized("cyclic:6", 6).upsilon.upsilon_part()
    assert an.abelian_invariants(c6) == (3, 12)
