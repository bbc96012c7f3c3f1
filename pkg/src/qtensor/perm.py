"""Permutation groups on ``{0, ..., degree-1}`` with right actions.

A permutation is a numpy array ``p`` with ``x -> p[x]``; the product
``a * b`` applies ``a`` first, so ``mul(a, b) == b[a]``.
"""

from __future__ import annotations

from functools import reduce
from math import gcd
from typing import Sequence

import numpy as np


class PermGroup:
    """Permutation group given by named generators."""

    def __init__(self, gens: Sequence[np.ndarray], names: Sequence[str] | None = None):
        gens = [np.asarray(g) for g in gens]
        if not gens:
            raise ValueError("need at least one generator (use the identity for trivial groups)")
        degree = len(gens[0])
        dtype = np.int16 if degree < 2 ** 15 else np.int32
        checked = []
        for g in gens:
            if len(g) != degree or not np.array_equal(np.sort(g), np.arange(degree)):
                raise ValueError("generator is not a permutation of the common degree")
            checked.append(g.astype(dtype))
        self.degree = degree
        self.dtype = dtype
        self.gens = checked
        self.names = tuple(names) if names is not None else tuple(f"g{i + 1}" for i in range(len(gens)))
        if len(self.names) != len(self.gens):
            raise ValueError("one name per generator")
        self._inv = [self.inv(g) for g in self.gens]
        self._id = np.arange(degree, dtype=dtype)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, gens={len(self.gens)})"

    # element operations (the interface shared with PcGroup) ---------------
    def identity(self) -> np.ndarray:
        return self._id

    @staticmethod
    def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return b[a]

    @staticmethod
    def inv(a: np.ndarray) -> np.ndarray:
        out = np.empty_like(a)
        out[a] = np.arange(len(a), dtype=a.dtype)
        return out

    @staticmethod
    def key(a: np.ndarray) -> bytes:
        return a.tobytes()

    def is_identity(self, a: np.ndarray) -> bool:
        return bool((a == self._id).all())

    def element_order(self, a: np.ndarray) -> int:
        # element orders here are small; repeated vectorized composition beats cycle walking
        k, x = 1, a
        while not (x == self._id).all():
            x = a[x]
            k += 1
            if k > 4096:
                return self._cycle_order(a)
        return k

    @staticmethod
    def _cycle_order(a: np.ndarray) -> int:
        seen = np.zeros(len(a), dtype=bool)
        out = 1
        for x in range(len(a)):
            if not seen[x]:
                k, y = 0, x
                while not seen[y]:
                    seen[y] = True
                    y = a[y]
                    k += 1
                out = out * k // gcd(out, k)
        return out

    # helpers ---------------------------------------------------------------
    def prod(self, *xs: np.ndarray) -> np.ndarray:
        return reduce(self.mul, xs, self._id)

    def comm(self, *xs: np.ndarray) -> np.ndarray:
        """Left-normed commutator ``[a, b, ...]``."""
        out = xs[0]
        for b in xs[1:]:
            out = self.prod(self.inv(out), self.inv(b), out, b)
        return out

    def conj(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.prod(self.inv(b), a, b)

    def power(self, a: np.ndarray, k: int) -> np.ndarray:
        if k < 0:
            a, k = self.inv(a), -k
        out, base = self._id, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def gen(self, name_or_index) -> np.ndarray:
        if isinstance(name_or_index, str):
            return self.gens[self.names.index(name_or_index)]
        return self.gens[name_or_index - 1]

    def evaluate(self, word: Sequence[int]) -> np.ndarray:
        """Evaluate a word in the generators (1-based signed letters)."""
        out = self._id
        for a in word:
            out = self.mul(out, self.gens[a - 1] if a > 0 else self._inv[-a - 1])
        return out

    def generators(self) -> list[np.ndarray]:
        return list(self.gens)
