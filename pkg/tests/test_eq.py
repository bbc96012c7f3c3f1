from math import gcd, lcm, prod

import pytest

from qtensor import analysis as an
from qtensor.catalog import catalog, pc_from_spec
from qtensor.claims import prop43_orders
from qtensor.eq import (NotQPerfectError, build_Eq, derived_power_subgroup, exterior_square_pc, naive_Eq,
                        schur_multiplier_q, tensor_square_pc)
from qtensor.models import realized

DN = [(n, q) for n in range(3, 11) for q in (1, 3, 5, 7, 9)]


@pytest.mark.parametrize("entry", [e for e in catalog() if e.pc.n], ids=lambda e: e.spec)
@pytest.mark.parametrize("q", [2, 3, 4])
def test_extension_invariants(entry, q):
    ext = build_Eq(entry.pc, q)
    E = ext.result
    assert E.check_consistency() == []
    assert E.order == entry.order * prod(ext.tail_orders)
    assert all(q % d == 0 for d in ext.tail_orders)
    n = entry.pc.n
    for i in range(ext.ntags):
        t = ext.tag_word(i + 1)
        assert all(E.mul(t, E.gen(j + 1)) == E.mul(E.gen(j + 1), t) for j in range(E.n))


def test_q0_unsupported():
    with pytest.raises(ValueError):
        build_Eq(pc_from_spec("dihedral:3"), 0)


@pytest.mark.parametrize("n,q", DN)
def test_naive_relation(n, q):
    rels = naive_Eq(pc_from_spec(f"dihedral:{n}")).check_consistency()
    assert [r.tail for r in rels] == [(0, n, n - 2)]


@pytest.mark.parametrize("n,q", DN)
def test_element_orders(n, q):
    ext = build_Eq(pc_from_spec(f"dihedral:{n}"), q)
    E = ext.result
    got = {"g1": E.element_order(E.gen(1)), "g2": E.element_order(E.gen(2))}
    got.update({f"t{i}": E.element_order(ext.tag_word(i)) for i in (1, 2, 3)})
    assert got == {"g1": 2 * q, "g2": lcm(n, q), "t1": q, "t2": q // gcd(n - 2, q), "t3": q // gcd(n, q)}
    assert got == prop43_orders(n, q)


@pytest.mark.parametrize("spec,q,structure", [("dihedral:5", 3, "dihedral:5"), ("dihedral:7", 5, "dihedral:7"),
                                              ("dihedral:9", 7, "dihedral:9"), ("dihedral:3", 1, "dihedral:3")])
def test_tensor_square_dihedral(spec, q, structure):
    assert tensor_square_pc(pc_from_spec(spec), q).structure == structure


def test_c3_matches_enumeration():
    pc = exterior_square_pc(pc_from_spec("cyclic:3"), 3)
    enum = an.recognize_structure(realized("cyclic:3", 3, tau=True).upsilon.upsilon_part())
    assert pc.structure == enum == "cyclic:3"


def test_not_perfect_error_names_obstruction():
    with pytest.raises(NotQPerfectError, match=r"\[2, 2\]"):
        tensor_square_pc(pc_from_spec("dihedral:4"), 4)
    with pytest.raises(NotQPerfectError):
        schur_multiplier_q(pc_from_spec("cyclic:2"), 2)


def test_schur_multiplier():
    assert schur_multiplier_q(pc_from_spec("cyclic:1"), 7) == ()
    for n in (3, 4, 5, 6):
        for q in (1, 3, 5):
            assert schur_multiplier_q(pc_from_spec(f"dihedral:{n}"), q) == ()
    w = derived_power_subgroup(build_Eq(pc_from_spec("dihedral:5"), 3))
    assert w.order == 10


def test_w_presentation_consistent():
    w = derived_power_subgroup(build_Eq(pc_from_spec("quaternion:8"), 3))
    assert w.presentation.check_consistency() == []
    assert w.presentation.order == w.order
