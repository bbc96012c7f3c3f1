import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qtensor import analysis as an
from qtensor.catalog import catalog
from qtensor.eta import (FAMILIES, build_eta_q, build_nu_q, build_tau_q, expected_counts,
                         named_subgroup_words)
from qtensor.groups import group_from_spec
from qtensor.models import pair_from_spec
from qtensor.words import free_reduce

PAIR = "dihedral:4/r/r^2,s"
SMALL = [e.spec for e in catalog("order-le-8")] + [PAIR]


def test_generator_counts():
    D4 = group_from_spec("dihedral:4")
    assert build_nu_q(D4, 4).ngens == 24
    e = build_nu_q(group_from_spec("cyclic:2"), 0)
    assert e.ngens == 4 and "K" not in e.tagging
    assert build_eta_q(pair_from_spec(PAIR), 2).ngens == 10
    assert build_eta_q(pair_from_spec(PAIR), 0).ngens == 8


def test_q0_has_no_hat_families():
    e = build_nu_q(group_from_spec("dihedral:3"), 0)
    assert [f for f, _ in e.families] == ["G-table", "H-table", "s1", "s2"]


@pytest.mark.parametrize("spec", SMALL)
@pytest.mark.parametrize("q", [0, 1, 3])
@pytest.mark.parametrize("tau", [False, True])
def test_counts_formula(spec, q, tau):
    p = pair_from_spec(spec)
    e = (build_tau_q if tau else build_eta_q)(p, q)
    gens, rels = expected_counts(len(p.G), len(p.H), len(p.K), q, tau)
    assert e.ngens == gens
    assert len(e.base.relators) == rels
    assert sum(c for _, c in e.families) == rels


@given(st.sampled_from(SMALL), st.integers(0, 6), st.booleans())
def test_rho_is_a_homomorphism(spec, q, economical):
    p = pair_from_spec(spec)
    e = build_eta_q(p, q, economical=economical)
    L = p.L
    target = an.regular_perm_group(L)
    images = [an.table_element(L, x) for x in e.rho_images()]
    an.GroupHom(e.base, target, images)     # raises unless every relator maps to 1


def _oracle(e, family, tup):
    """Re-derive one relator from its family and element tuple, via names."""
    L, q = e.L, e.q
    x = lambda g, s=1: f"x{g + 1}^{s}"
    y = lambda h, s=1: f"y{h + 1}^{s}"
    k = lambda c, s=1: f"k{c + 1}^{s}"

    def cm(a, b):   # a, b are (letter-fn, element) pairs
        (fa, ea), (fb, eb) = a, b
        return [fa(ea, -1), fb(eb, -1), fa(ea), fb(eb)]

    def inv(toks):
        out = []
        for t in reversed(toks):
            n, s = t.split("^")
            out.append(f"{n}^{-int(s)}")
        return out

    if family == "G-table":
        a, b = tup
        toks = [x(a), x(b), x(L.mul(a, b), -1)]
    elif family == "H-table":
        a, b = tup
        toks = [y(a), y(b), y(L.mul(a, b), -1)]
    elif family == "s1":
        g, h, g1 = tup
        toks = [x(g1, -1)] + cm((x, g), (y, h)) + [x(g1)] + inv(cm((x, L.conj(g, g1)), (y, L.conj(h, g1))))
    elif family == "s2":
        g, h, h1 = tup
        toks = [y(h1, -1)] + cm((x, g), (y, h)) + [y(h1)] + inv(cm((x, L.conj(g, h1)), (y, L.conj(h, h1))))
    elif family == "hat-G":
        c, g = tup
        toks = [x(g, -1), k(c), x(g), k(L.conj(c, g), -1)]
    elif family == "hat-H":
        c, h = tup
        toks = [y(h, -1), k(c), y(h), k(L.conj(c, h), -1)]
    elif family == "hat-T":
        c, g, h = tup
        cq = L.pow(c, q)
        toks = [k(c, -1)] + cm((x, g), (y, h)) + [k(c)] + inv(cm((x, L.conj(g, cq)), (y, L.conj(h, cq))))
    elif family == "hat-prod":
        c, c1 = tup
        prod_toks = []
        for i in range(1, q):
            z = L.pow(c, q - 1 - i)
            prod_toks += [x(z, -1)] + cm((x, c), (y, L.pow(c1, -i))) + [x(z)]
        toks = [k(c, -1), k(L.mul(c, c1)), k(c1, -1)] + inv(prod_toks)
    elif family == "hat-comm":
        c, c1 = tup
        toks = cm((k, c), (k, c1)) + inv(cm((x, L.pow(c, q)), (y, L.pow(c1, q))))
    elif family == "hat-power":
        g, h = tup
        toks = [k(L.comm(g, h))] + inv(cm((x, g), (y, h))) * q
    elif family == "delta":
        (c,) = tup
        toks = cm((x, c), (y, c))
    return free_reduce(e.base.word(" ".join(toks)))


def _tuples(e, family):
    p = e.pair
    G, H, K = p.G, p.H, p.K
    return {"G-table": product(G, G), "H-table": product(H, H), "s1": product(G, H, G),
            "s2": product(G, H, H), "hat-G": product(K, G), "hat-H": product(K, H),
            "hat-T": product(K, G, H), "hat-prod": product(K, K), "hat-comm": product(K, K),
            "hat-power": product(G, H), "delta": ((c,) for c in K)}[family]


@pytest.mark.parametrize("spec,q,tau", [("dihedral:3", 3, True), (PAIR, 2, True), ("quaternion:8", 4, False),
                                        ("cyclic:6", 5, True)])
def test_relator_spot_check(spec, q, tau):
    e = (build_tau_q if tau else build_eta_q)(pair_from_spec(spec), q)
    rng = random.Random(f"{spec}|{q}")
    checked = 0
    for family, _ in e.families:
        rels = e.base.relators[e.family_slice(family)]
        for i, tup in enumerate(_tuples(e, family)):
            if rng.random() < 0.05 or i == 0:
                assert rels[i] == _oracle(e, family, tup), (family, tup)
                checked += 1
        assert i + 1 == len(rels)
    assert checked > 0.04 * len(e.base.relators)


def test_named_subgroups():
    e = build_eta_q(pair_from_spec(PAIR), 2)
    assert len(named_subgroup_words(e, "T")) == 16
    assert len(named_subgroup_words(e, "Upsilon")) == 18
    assert len(named_subgroup_words(e, "Gamma-1")) == e.ngens
    with pytest.raises(ValueError):
        named_subgroup_words(e, "Gamma-0")
    with pytest.raises(ValueError):
        named_subgroup_words(e, "Nope")
    assert named_subgroup_words(build_eta_q(pair_from_spec(PAIR), 0), "K") == []


def test_family_order():
    e = build_tau_q(pair_from_spec(PAIR), 2)
    assert tuple(f for f, _ in e.families) == FAMILIES
