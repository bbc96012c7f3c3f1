import pytest
from hypothesis import given, strategies as st

from qtensor.words import (FpPresentation, MalformedWordError, comm, conj, cyclic_reduce,
                           free_reduce, inverse, mul, parse_word, power)

letters = st.lists(st.integers(1, 4).flatmap(lambda g: st.sampled_from([g, -g])), max_size=40)


def test_cancellation_examples():
    assert free_reduce([1, -1]) == ()
    assert free_reduce([1, 2, -2, 1]) == (1, 1)
    assert free_reduce([]) == ()


def test_unknown_generator_rejected():
    with pytest.raises(MalformedWordError):
        free_reduce([1, 5], ngens=4)
    with pytest.raises(MalformedWordError):
        free_reduce([0])


@given(letters)
def test_free_reduce_idempotent_and_shorter(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)
    assert all(a != -b for a, b in zip(r, r[1:]))


@given(letters, letters)
def test_inverse_and_product(a, b):
    assert mul(a, inverse(a)) == ()
    assert inverse(mul(a, b)) == mul(inverse(b), inverse(a))


def test_commutator_convention():
    # [x, y] = x^-1 y^-1 x y, left normed
    assert comm((1,), (2,)) == (-1, -2, 1, 2)
    assert comm((1,), (2,), (3,)) == comm(comm((1,), (2,)), (3,))
    assert conj((1,), (2,)) == (-2, 1, 2)
    assert power((1, 2), -2) == (-2, -1, -2, -1)


def test_cyclic_reduce():
    assert cyclic_reduce((2, 1, 3, -2)) == (1, 3)


def test_presentation_roundtrip():
    p = FpPresentation(("a", "b"), (parse_word("a^2", {"a": 1, "b": 2}), (1, 2, 1, 2)))
    q = FpPresentation.loads(p.dumps())
    assert q == p
    assert p.word("a b^-2 1") == (1, -2, -2)
    with pytest.raises(MalformedWordError):
        p.word("c")


def test_presentation_requires_reduced_relators():
    with pytest.raises(MalformedWordError):
        FpPresentation(("a",), ((1, -1),))
    p = FpPresentation.from_raw(("a",), [(1, -1), (1, 1), (-1, -1)])
    assert p.relators == ((1, 1),)
