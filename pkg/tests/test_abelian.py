from math import gcd
from itertools import combinations

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from qtensor import analysis as an
from qtensor.abelian import abelian_invariants_of_relations, is_q_perfect, q_abelianization, smith_normal_form
from qtensor.catalog import catalog, pc_from_spec
from qtensor.groups import group_from_spec


def determinantal_divisors(m):
    """d_1 ... d_k = gcd of the k x k minors; an oracle independent of row reduction."""
    M = sympy.Matrix(m)
    r, c = M.shape
    out, prev = [], 1
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                g = gcd(g, int(M.extract(list(rows), list(cols)).det()))
        if g == 0:
            out.extend([0] * (min(r, c) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


def test_examples():
    assert list(smith_normal_form([[0, 0], [0, 0]])) == [0, 0]
    assert list(smith_normal_form([[2, 0], [0, 3]])) == [1, 6]
    assert list(smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == [1, 1, 1]


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_matches_minors(r, c, data):
    m = data.draw(st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r))
    assert list(smith_normal_form(m)) == determinantal_divisors(m)


@given(st.integers(1, 8), st.integers(1, 8), st.data())
def test_snf_divisibility_chain(r, c, data):
    m = data.draw(st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r))
    d = list(smith_normal_form(m))
    assert len(d) == min(r, c)
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    ref = sympy_snf(sympy.Matrix(m))
    want = [abs(int(ref[i, i])) for i in range(min(r, c))]
    assert sorted(d) == sorted(want)


def test_invariants_of_relations():
    assert abelian_invariants_of_relations([[2, 0], [0, 3]], 2) == (6,)
    assert abelian_invariants_of_relations([], 1) == (0,)
    assert abelian_invariants_of_relations([[4, 0], [0, 6]], 2) == (2, 12)


@pytest.mark.parametrize("spec,q,expect", [("dihedral:5", 3, True), ("cyclic:2", 2, False),
                                           ("dihedral:4", 4, False)])
def test_q_perfect_examples(spec, q, expect):
    assert is_q_perfect(pc_from_spec(spec), q) is expect
    assert is_q_perfect(an.regular_perm_group(group_from_spec(spec)), q) is expect


def test_d4_obstruction():
    # D_4 / D_4' D_4^4 = D_4 / <r^2> has order 4
    assert q_abelianization(pc_from_spec("dihedral:4"), 4) == (2, 2)
    t = group_from_spec("dihedral:4")
    sub = t.closure(list(t.derived_subgroup()) + list(t.power_subgroup(range(8), 4)))
    assert t.order // len(sub) == 4


@pytest.mark.parametrize("entry", catalog("order-le-16"), ids=lambda e: e.spec)
def test_q_perfect_edge_cases(entry):
    t = entry.table
    perfect = len(t.derived_subgroup()) == t.order
    assert is_q_perfect(entry.pc, 0) is perfect
    assert is_q_perfect(entry.pc, 1)
    assert is_q_perfect(an.regular_perm_group(t), 1)
