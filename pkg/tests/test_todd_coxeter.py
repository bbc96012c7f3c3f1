import numpy as np
import pytest

from qtensor import analysis as an
from qtensor.eta import build_eta_q, build_nu_q
from qtensor.groups import group_from_spec
from qtensor.models import pair_from_spec
from qtensor.todd_coxeter import (CosetLimitExceeded, enumerate_cosets, permutation_representation,
                                  regular_representation, subgroup_index)
from qtensor.words import FpPresentation, MalformedWordError


def dihedral_fp(n):
    return FpPresentation.loads(f"gens: a b\nrel: a^2\nrel: b^{n}\nrel: a b a b\n")


@pytest.mark.parametrize("strategy", ["hlt", "felsch"])
@pytest.mark.parametrize("n", [3, 5, 8, 12])
def test_dihedral(n, strategy):
    t = enumerate_cosets(dihedral_fp(n), [], strategy=strategy)
    assert t.num_cosets == 2 * n
    assert t.verify()
    rep = regular_representation(t)
    assert an.whole(rep).order == 2 * n


def test_trivial_presentations():
    assert enumerate_cosets(FpPresentation.loads("gens: a\nrel: a\n")).num_cosets == 1
    assert enumerate_cosets(FpPresentation(())).num_cosets == 1
    p = dihedral_fp(6)
    assert subgroup_index(p, [p.word("a"), p.word("b")]) == 1
    assert subgroup_index(p, [p.word("b")]) == 2


def test_subgroup_coset_fixed():
    p = dihedral_fp(5)
    t = enumerate_cosets(p, [p.word("a")])
    assert t.num_cosets == 5
    assert t.trace(p.word("a")) == 0
    with pytest.raises(ValueError):
        regular_representation(t)
    assert an.whole(permutation_representation(t)).order == 10


def test_c3_regular():
    t = enumerate_cosets(FpPresentation.loads("gens: g\nrel: g^3\n"))
    rep = regular_representation(t)
    assert rep.degree == 3 and sorted(rep.gens[0].tolist()) == [0, 1, 2]
    assert rep.element_order(rep.gens[0]) == 3


def test_limit_is_a_flag_not_a_wrong_table():
    t = enumerate_cosets(dihedral_fp(50), [], max_cosets=20)
    assert not t.complete and t.table is None
    with pytest.raises(CosetLimitExceeded):
        t.num_cosets


def test_malformed_subgroup_word():
    with pytest.raises(MalformedWordError):
        enumerate_cosets(dihedral_fp(3), [(3,)])


def test_permutations_are_bijections():
    e = build_eta_q(pair_from_spec("dihedral:4/r/r^2,s"), 2)
    t = enumerate_cosets(e.base, [])
    for i in range(e.ngens):
        a = t.action(i + 1)
        assert np.array_equal(np.sort(a), np.arange(t.num_cosets))


@pytest.mark.parametrize("spec,q", [("cyclic:4", 2), ("dihedral:3", 3), ("quaternion:8", 2)])
def test_strategy_independent_and_deterministic(spec, q):
    e = build_nu_q(group_from_spec(spec), q, economical=True)
    a = enumerate_cosets(e.base, [], strategy="hlt")
    b = enumerate_cosets(e.base, [], strategy="felsch")
    assert a.num_cosets == b.num_cosets
    assert a.num_cosets % group_from_spec(spec).order ** 2 == 0
    for s, ref in (("hlt", a), ("felsch", b)):
        again = enumerate_cosets(e.base, [], strategy=s)
        assert again.dumps() == ref.dumps()


def test_nu3_d5_regular_degree():
    # |Upsilon| |D_5|^2 = 10 * 100
    e = build_nu_q(group_from_spec("dihedral:5"), 3)
    t = enumerate_cosets(e.base, [])
    assert regular_representation(t).degree == 1000


@pytest.mark.slow
def test_nu4_d4_trivial_subgroup():
    # 128 * 64: the tensor square (C_2^5 x C_4) extended by D_4 x D_4
    e = build_nu_q(group_from_spec("dihedral:4"), 4)
    t = enumerate_cosets(e.base, [])
    assert t.num_cosets == 8192
