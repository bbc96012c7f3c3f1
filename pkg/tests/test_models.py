import numpy as np
import pytest

from qtensor import analysis as an
from qtensor.catalog import catalog
from qtensor.models import pair_from_spec, realized
from qtensor.groups import GroupTableError

PAIR = "dihedral:4/r/r^2,s"
SMALL = [e.spec for e in catalog("order-le-8")] + [PAIR]


@pytest.mark.parametrize("spec", SMALL)
@pytest.mark.parametrize("q", [0, 1, 2, 3, 4])
def test_economical_presentation_same_group(spec, q):
    a = realized(spec, q, economical=True)
    b = realized(spec, q, economical=False)
    assert a.index == b.index
    assert a.upsilon_order == b.upsilon_order


@pytest.mark.parametrize("spec,q", [("cyclic:4", 2), ("dihedral:3", 3), (PAIR, 2), (PAIR, 0),
                                    ("quaternion:8", 2), ("cyclic:2", 2)])
def test_representation_is_faithful(spec, q):
    r = realized(spec, q)
    assert r.whole().order == r.order
    assert r.order == r.upsilon_order * len(r.pair.G) * len(r.pair.H)
    ups = r.upsilon
    assert ups.handle.order == r.upsilon_order


def test_regression_constants():
    # frozen from a full-presentation enumeration over the trivial subgroup
    r = realized(PAIR, 2)
    assert (r.order, r.upsilon_order) == (64, 4)
    assert r.order // r.upsilon_order == 16        # |G| |H|
    r0 = realized(PAIR, 0)
    assert (r0.order, r0.upsilon_order) == (64, 4)
    assert realized("cyclic:4", 2).order == 128
    assert realized("dihedral:3", 3).order == 216
    assert realized("dihedral:5", 3).order == 1000


def test_rho_on_generators():
    r = realized(PAIR, 2)
    L, P = r.L, r.pair
    for g in P.G:
        assert r.rho(r.X(g)) == g
    for k in P.K:
        assert r.rho(r.Khat(k)) == L.pow(k, 2)


def test_upsilon_generator_names():
    ups = realized(PAIR, 2).upsilon
    assert ups.group.names[0].startswith("x") and ups.group.names[-1].startswith("k")


def test_pair_specs():
    assert pair_from_spec("dihedral:4").is_diagonal
    p = pair_from_spec(PAIR)
    assert (len(p.G), len(p.H)) == (4, 4)
    with pytest.raises(GroupTableError):
        pair_from_spec("dihedral:4/r")
    with pytest.raises(GroupTableError):
        pair_from_spec("dihedral:4/r/s")
