"""Explicit subgroups of permutation groups and their structure.

Subgroups are stored as a dense array of elements (one permutation per
row), closed with Dimino's algorithm so that a whole right coset is added
with a single indexing operation.  Membership uses a 64-bit linear
fingerprint of each row, with an exact row comparison on every hit.
Above the explicit budget only the order is available, via sympy's
Schreier-Sims.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .perm import PermGroup

EXPLICIT_MAX_ORDER = 10 ** 5
EXPLICIT_MAX_ENTRIES = 1 << 27   # order * degree


class BudgetExceeded(RuntimeError):
    pass


class NotAbelianError(ValueError):
    def __init__(self, a, b):
        super().__init__("subgroup is not abelian: two elements do not commute")
        self.witness = (a, b)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _factor(n: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class _Fingerprints:
    def __init__(self, degree: int):
        rng = np.random.default_rng(0x5EED)
        self.vec = rng.integers(1, 2 ** 62, size=degree, dtype=np.int64)

    def __call__(self, rows: np.ndarray) -> np.ndarray:
        # wrapping int64 arithmetic is intended
        with np.errstate(over="ignore"):
            return rows.astype(np.int64) @ self.vec


_FP_CACHE: dict[int, _Fingerprints] = {}


def _fingerprints(degree: int) -> _Fingerprints:
    fp = _FP_CACHE.get(degree)
    if fp is None:
        fp = _FP_CACHE[degree] = _Fingerprints(degree)
    return fp


class SubgroupHandle:
    """A subgroup of `ambient`, explicit when small enough.

    `gens` is a short generating list (Dimino keeps only generators that
    enlarged the group).  `elements` is ``None`` for order-only handles.
    """

    def __init__(self, ambient: PermGroup, gens: Sequence[np.ndarray] = (),
                 budget: int = EXPLICIT_MAX_ORDER):
        self.ambient = ambient
        self.budget = budget
        self.fp = _fingerprints(ambient.degree)
        self.gens: list[np.ndarray] = []
        self._rows = np.empty((16, ambient.degree), dtype=ambient.dtype)
        self._rows[0] = ambient.identity()
        self._n = 1
        self._index: dict[int, list[int]] = {int(self.fp(self._rows[:1])[0]): [0]}
        self._order_only: int | None = None
        for g in gens:
            self.extend(g)

    # construction ---------------------------------------------------------
    @classmethod
    def from_elements(cls, ambient: PermGroup, rows: np.ndarray, gens=()) -> "SubgroupHandle":
        """Wrap a set already known to be a subgroup (rows distinct, identity first)."""
        s = cls(ambient)
        rows = np.asarray(rows, dtype=ambient.dtype)
        s._rows = rows.copy()
        s._n = len(rows)
        s._index = {}
        for i, f in enumerate(s.fp(rows).tolist()):
            s._index.setdefault(f, []).append(i)
        s.gens = list(gens) if gens else s._small_gens()
        return s

    def _small_gens(self) -> list[np.ndarray]:
        sub = SubgroupHandle(self.ambient)
        for i in range(1, self._n):
            if sub.order == self._n:
                break
            x = self._rows[i]
            if not sub.contains(x):
                sub.extend(x)
        return sub.gens

    def _find(self, x: np.ndarray, f: int) -> int:
        for i in self._index.get(f, ()):
            if np.array_equal(self._rows[i], x):
                return i
        return -1

    def _append_block(self, block: np.ndarray) -> None:
        need = self._n + len(block)
        if need > self.budget or need * self.ambient.degree > EXPLICIT_MAX_ENTRIES:
            raise BudgetExceeded(f"subgroup exceeds explicit budget ({need} elements so far)")
        if need > len(self._rows):
            cap = max(need, 2 * len(self._rows))
            grown = np.empty((cap, self.ambient.degree), dtype=self._rows.dtype)
            grown[:self._n] = self._rows[:self._n]
            self._rows = grown
        self._rows[self._n:need] = block
        for i, f in enumerate(self.fp(block).tolist()):
            self._index.setdefault(f, []).append(self._n + i)
        self._n = need

    def extend(self, g: np.ndarray) -> bool:
        """Replace the subgroup by <self, g>; returns False if g was inside."""
        if self._order_only is not None:
            raise BudgetExceeded("cannot extend an order-only subgroup")
        g = np.asarray(g, dtype=self.ambient.dtype)
        if self.contains(g):
            return False
        self.gens.append(g)
        old = self._rows[:self._n].copy()
        reps = [g]
        try:
            self._append_block(g[old])          # the right coset old * g
            i = 0
            while i < len(reps):
                r = reps[i]
                for s in self.gens:
                    x = s[r]
                    if not self.contains(x):
                        reps.append(x)
                        self._append_block(x[old])
                i += 1
        except BudgetExceeded:
            self._fallback()
        return True

    def _fallback(self) -> None:
        from sympy.combinatorics import Permutation, PermutationGroup
        pg = PermutationGroup([Permutation(g.tolist()) for g in self.gens])
        self._order_only = int(pg.order())
        self._rows = self._rows[:1]
        self._n = 1

    # queries --------------------------------------------------------------
    @property
    def explicit(self) -> bool:
        return self._order_only is None

    @property
    def order(self) -> int:
        return self._order_only if self._order_only is not None else self._n

    def __len__(self):
        return self.order

    @property
    def elements(self) -> np.ndarray | None:
        return self._rows[:self._n] if self.explicit else None

    def _need_explicit(self):
        if not self.explicit:
            raise BudgetExceeded("operation needs an explicit element set")

    def contains(self, x: np.ndarray) -> bool:
        self._need_explicit()
        x = np.asarray(x)
        return self._find(x, int(self.fp(x[None, :])[0])) >= 0

    def contains_all(self, rows: np.ndarray) -> bool:
        return all(self.contains(r) for r in rows)

    def issubset(self, other: "SubgroupHandle") -> bool:
        return all(other.contains(g) for g in self.gens)

    def same_as(self, other: "SubgroupHandle") -> bool:
        return self.order == other.order and self.issubset(other)

    def element_orders(self) -> np.ndarray:
        self._need_explicit()
        X = self.elements
        ident = self.ambient.identity()
        orders = np.zeros(len(X), dtype=np.int64)
        cur = X.copy()
        k = 1
        live = np.arange(len(X))
        while len(live):
            done = (cur == ident).all(axis=1)
            orders[live[done]] = k
            live, cur = live[~done], cur[~done]
            if not len(live):
                break
            cur = np.take_along_axis(X[live], cur, axis=1)   # x^(k+1) = x^k * x
            k += 1
        return orders

    def exponent(self) -> int:
        out = 1
        for o in np.unique(self.element_orders()).tolist():
            out = _lcm(out, int(o))
        return out

    def is_abelian(self) -> bool:
        return self._noncommuting_pair() is None

    def _noncommuting_pair(self):
        A = self.ambient
        for i, a in enumerate(self.gens):
            for b in self.gens[i + 1:]:
                if not np.array_equal(A.mul(a, b), A.mul(b, a)):
                    return a, b
        return None

    def centralizes(self, others: Iterable[np.ndarray]) -> bool:
        """True if every element of `others` commutes with all of self."""
        A = self.ambient
        for y in others:
            for g in self.gens:
                if not np.array_equal(A.mul(g, y), A.mul(y, g)):
                    return False
        return True

    def __repr__(self):
        return f"SubgroupHandle(order={self.order}, gens={len(self.gens)})"


# constructors ---------------------------------------------------------------
def close_subgroup(g: PermGroup, words: Sequence[Sequence[int]] = (),
                   budget: int = EXPLICIT_MAX_ORDER) -> SubgroupHandle:
    """Subgroup generated by words in the generators of `g`."""
    return SubgroupHandle(g, [g.evaluate(w) for w in words], budget)


def generated(g: PermGroup, perms: Sequence[np.ndarray],
              budget: int = EXPLICIT_MAX_ORDER) -> SubgroupHandle:
    return SubgroupHandle(g, perms, budget)


def whole(g: PermGroup, budget: int = EXPLICIT_MAX_ORDER) -> SubgroupHandle:
    return SubgroupHandle(g, g.generators(), budget)


def normal_closure(by: Sequence[np.ndarray], gens: Sequence[np.ndarray], ambient: PermGroup,
                   budget: int = EXPLICIT_MAX_ORDER) -> SubgroupHandle:
    """Smallest subgroup containing `gens` normalized by the elements `by`."""
    s = SubgroupHandle(ambient, gens, budget)
    todo = list(s.gens)
    while todo:
        x = todo.pop()
        for y in by:
            c = ambient.conj(x, y)
            if s.extend(c):
                todo.append(c)
    return s


def commutator_subgroup(A: SubgroupHandle, B: SubgroupHandle) -> SubgroupHandle:
    """[A, B], the normal closure in <A, B> of commutators of generators."""
    amb = A.ambient
    comms = [amb.comm(a, b) for a in A.gens for b in B.gens]
    return normal_closure(A.gens + B.gens, comms, amb, A.budget)


def center(s: SubgroupHandle) -> SubgroupHandle:
    s._need_explicit()
    X = s.elements
    keep = np.ones(len(X), dtype=bool)
    for g in s.gens:
        keep &= (g[X] == X[:, g]).all(axis=1)     # x*g == g*x
    return SubgroupHandle.from_elements(s.ambient, X[keep])


def derived_series(s: SubgroupHandle, limit: int = 64) -> list[SubgroupHandle]:
    out = [s]
    while len(out) < limit:
        d = commutator_subgroup(out[-1], out[-1])
        if d.order == out[-1].order:
            break
        out.append(d)
    return out


def lower_central_series(s: SubgroupHandle, limit: int = 64) -> list[SubgroupHandle]:
    out = [s]
    while len(out) < limit:
        d = commutator_subgroup(out[-1], s)
        if d.order == out[-1].order:
            break
        out.append(d)
    return out


def upper_central_series(s: SubgroupHandle, limit: int = 64) -> list[SubgroupHandle]:
    s._need_explicit()
    A, X = s.ambient, s.elements
    out = [SubgroupHandle(A)]
    while len(out) < limit:
        Z = out[-1]
        keep = np.ones(len(X), dtype=bool)
        for i in range(len(X)):
            x = X[i]
            keep[i] = all(Z.contains(A.comm(x, g)) for g in s.gens)
        nxt = SubgroupHandle.from_elements(A, X[keep])
        if nxt.order == Z.order:
            break
        out.append(nxt)
    return out


SERIES = {"derived": derived_series, "lower-central": lower_central_series,
          "center": upper_central_series}


def series(s: SubgroupHandle, kind: str) -> list[SubgroupHandle]:
    try:
        return SERIES[kind](s)
    except KeyError:
        raise ValueError(f"unknown series {kind!r}; choose from {sorted(SERIES)}") from None


def nilpotency_class(s: SubgroupHandle) -> int | None:
    lcs = lower_central_series(s)
    return len(lcs) - 1 if lcs[-1].order == 1 else None


def derived_length(s: SubgroupHandle) -> int | None:
    ds = derived_series(s)
    return len(ds) - 1 if ds[-1].order == 1 else None


# abelian invariants and recognition -----------------------------------------
def abelian_invariants(s: SubgroupHandle) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... (each >= 2) of an abelian subgroup.

    For each prime p the number of elements of order dividing p^k is
    p^(sum_i min(l_i, k)) where the p-part has type (p^l_1, p^l_2, ...),
    which pins the type down.
    """
    pair = s._noncommuting_pair()
    if pair is not None:
        raise NotAbelianError(*pair)
    n = s.order
    if n == 1:
        return ()
    orders = s.element_orders()
    per_prime: dict[int, list[int]] = {}
    for p, e in _factor(n).items():
        logs = []
        for k in range(e + 1):
            cnt = int(np.count_nonzero((p ** k) % orders == 0))
            logs.append(round(np.log(cnt) / np.log(p)))
        # r[k] = number of cyclic p-factors of exponent >= k
        r = [logs[k] - logs[k - 1] for k in range(1, e + 1)]
        parts = []
        for k in range(1, e + 1):
            ge_k = r[k - 1]
            ge_next = r[k] if k < e else 0
            parts.extend([p ** k] * (ge_k - ge_next))
        per_prime[p] = sorted(parts)
    width = max(len(v) for v in per_prime.values())
    factors = [1] * width
    for p, parts in per_prime.items():
        padded = [1] * (width - len(parts)) + parts
        factors = [a * b for a, b in zip(factors, padded)]
    out = tuple(f for f in factors if f > 1)
    assert int(np.prod(out)) == n
    return out


def _is_dihedral(s: SubgroupHandle) -> bool:
    n = s.order // 2
    if s.order % 2 or n < 3:
        return False
    A, X = s.ambient, s.elements
    orders = s.element_orders()
    cyc = [i for i in np.nonzero(orders == n)[0]]
    if not cyc:
        return False
    c = X[cyc[0]]
    C = SubgroupHandle(A, [c])
    cinv = A.inv(c)
    for i in np.nonzero(orders == 2)[0]:
        t = X[i]
        if not C.contains(t) and np.array_equal(A.conj(c, t), cinv):
            return True
    return False


def recognize_structure(s: SubgroupHandle) -> str:
    if s.order == 1:
        return "trivial"
    if s.order > EXPLICIT_MAX_ORDER or not s.explicit:
        return f"unrecognized({s.order}, ?, ?)"
    if s.is_abelian():
        inv = abelian_invariants(s)
        return f"cyclic:{inv[0]}" if len(inv) == 1 else "abelian:[" + ",".join(map(str, inv)) + "]"
    if _is_dihedral(s):
        return f"dihedral:{s.order // 2}"
    n = s.order
    if n >= 8 and n & (n - 1) == 0:
        if int(np.count_nonzero(s.element_orders() == 2)) == 1:
            return f"quaternion:{n}"
    cls = nilpotency_class(s)
    return f"unrecognized({n}, {s.exponent()}, {cls if cls is not None else 'inf'})"


# homomorphisms --------------------------------------------------------------
def regular_perm_group(table) -> PermGroup:
    """Right regular representation of a `FiniteGroupTable` on its elements;
    generators are the table's standard generators (or a generating set)."""
    if table.gens:
        names, elems = list(table.gens), list(table.gens.values())
    else:
        elems = list(table.generating_set(range(table.order))) or [table.identity]
        names = [table.labels[e] for e in elems]
    return PermGroup([table.product[:, e] for e in elems], names)


def table_element(table, e: int) -> np.ndarray:
    """The permutation of element `e` in `regular_perm_group(table)`."""
    return np.asarray(table.product[:, e])


@dataclass(eq=False)
class GroupHom:
    """Homomorphism given by images of the source generators.

    The source is a PermGroup (optionally with a presentation whose
    relators are checked) or an FpPresentation; construction fails unless
    the assignment extends to a homomorphism.
    """

    source: object
    target: PermGroup
    images: list

    def __post_init__(self):
        from .words import FpPresentation
        self.images = [np.asarray(x, dtype=self.target.dtype) for x in self.images]
        src = self.source
        if isinstance(src, FpPresentation):
            ngens, rels = src.ngens, src.relators
        else:
            ngens, rels = len(src.gens), getattr(src, "relators", None)
        if len(self.images) != ngens:
            raise ValueError("one image per source generator")
        if rels is not None:
            for r in rels:
                if not self.target.is_identity(self.evaluate(r)):
                    raise ValueError("images do not satisfy a source relator")
        if not isinstance(src, FpPresentation):
            g = self.graph()
            if g.order != whole(src).order:
                raise ValueError("images do not define a homomorphism")

    def evaluate(self, word: Sequence[int]) -> np.ndarray:
        T = self.target
        out = T.identity()
        for a in word:
            x = self.images[abs(a) - 1]
            out = T.mul(out, x if a > 0 else T.inv(x))
        return out

    def graph(self) -> SubgroupHandle:
        """The subgroup {(x, f(x))} of source x target as one permutation group."""
        S, T = self.source, self.target
        d = S.degree
        big = PermGroup([np.concatenate([s.astype(np.int64), t.astype(np.int64) + d])
                         for s, t in zip(S.gens, self.images)])
        return whole(big)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        """Image of a source element (by lookup in the graph)."""
        gph = self.graph_cached()
        d = self.source.degree
        for row in gph.elements:
            if np.array_equal(row[:d], x):
                return (row[d:] - d).astype(self.target.dtype)
        raise ValueError("element not in the source group")

    def graph_cached(self) -> SubgroupHandle:
        g = self.__dict__.get("_graph")
        if g is None:
            g = self.__dict__["_graph"] = self.graph()
        return g


def hom_kernel(h: GroupHom) -> SubgroupHandle:
    gph = h.graph_cached()
    d = h.source.degree
    X = gph.elements
    ident = np.arange(h.target.degree) + d
    rows = X[(X[:, d:] == ident).all(axis=1), :d].astype(h.source.dtype)
    return SubgroupHandle.from_elements(h.source, rows)


def hom_image(h: GroupHom) -> SubgroupHandle:
    return SubgroupHandle(h.target, h.images)
