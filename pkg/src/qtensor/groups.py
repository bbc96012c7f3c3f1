"""Concrete finite groups given by multiplication tables.

Elements are 0-based indices into the table; the text file format and
user-facing element numbers are 1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Sequence

import numpy as np

from .words import FpPresentation, MalformedWordError, free_reduce, parse_word


class GroupTableError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroupTable:
    product: np.ndarray
    name: str = "G"
    # standard generators, name -> element index; used to parse words
    gens: dict = field(default_factory=dict)
    labels: tuple = ()

    def __post_init__(self):
        P = np.asarray(self.product, dtype=np.int64)
        if P.ndim != 2 or P.shape[0] != P.shape[1] or P.shape[0] == 0:
            raise GroupTableError("product table must be a non-empty square array")
        n = P.shape[0]
        if P.min() < 0 or P.max() >= n:
            raise GroupTableError("table entries out of range")
        P.setflags(write=False)
        object.__setattr__(self, "product", P)
        ids = [e for e in range(n) if (P[e] == np.arange(n)).all() and (P[:, e] == np.arange(n)).all()]
        if len(ids) != 1:
            raise GroupTableError("no two-sided identity")
        e = ids[0]
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.nonzero(P[a] == e)[0]
            if len(hits) != 1 or P[hits[0], a] != e:
                raise GroupTableError(f"element {a + 1} has no two-sided inverse")
            inv[a] = hits[0]
        # (ab)c == a(bc), exhaustively
        lhs = P[P, :]            # lhs[a, b, c] = P[P[a, b], c]
        rhs = P[:, P]            # rhs[a, b, c] = P[a, P[b, c]]
        if not np.array_equal(lhs, rhs):
            a, b, c = map(int, np.argwhere(lhs != rhs)[0])
            raise GroupTableError(f"associativity fails at ({a + 1}, {b + 1}, {c + 1})")
        inv.setflags(write=False)
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", inv)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i + 1) for i in range(n)))

    @property
    def order(self) -> int:
        return self.product.shape[0]

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroupTable({self.name}, order={self.order})"

    # element arithmetic -------------------------------------------------
    def mul(self, *xs: int) -> int:
        out = self.identity
        for x in xs:
            out = int(self.product[out, x])
        return out

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = self.identity
        for _ in range(k):
            out = int(self.product[out, a])
        return out

    def conj(self, a: int, b: int) -> int:
        """``b^-1 a b``."""
        return self.mul(self.inv(b), a, b)

    def comm(self, a: int, b: int) -> int:
        return self.mul(self.inv(a), self.inv(b), a, b)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = int(self.product[x, a])
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        return reduce(lambda u, v: u * v // gcd(u, v),
                      (self.element_order(a) for a in range(self.order)), 1)

    def evaluate(self, word: Sequence[int], images: Sequence[int]) -> int:
        out = self.identity
        for a in word:
            x = images[abs(a) - 1]
            out = int(self.product[out, x if a > 0 else self.inverse[x]])
        return out

    def parse_element(self, text: str) -> int:
        """A 1-based element number, an element label, or a word in `gens`."""
        text = text.strip()
        if text.isdigit():
            k = int(text)
            if not 1 <= k <= self.order:
                raise GroupTableError(f"element {k} out of range 1..{self.order}")
            return k - 1
        if text in self.labels:
            return self.labels.index(text)
        names = list(self.gens)
        w = parse_word(text, {g: i + 1 for i, g in enumerate(names)})
        return self.evaluate(w, [self.gens[g] for g in names])

    # subgroups ----------------------------------------------------------
    def closure(self, gens: Sequence[int]) -> tuple[int, ...]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(dict.fromkeys(gens))
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.product[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    def generating_set(self, S: Sequence[int]) -> tuple[int, ...]:
        """Greedy generators of the subgroup `S`: repeatedly add the
        largest-order element not yet covered (ties by index)."""
        S = sorted(set(S))
        order = {x: self.element_order(x) for x in S}
        have: set = {self.identity}
        gens: list[int] = []
        for x in sorted(S, key=lambda x: (-order[x], x)):
            if x not in have:
                gens.append(x)
                have = set(self.closure(gens))
            if len(have) == len(S):
                break
        return tuple(gens)

    def is_subgroup(self, S: Sequence[int]) -> bool:
        s = set(S)
        if self.identity not in s:
            return False
        return all(int(self.product[a, self.inverse[b]]) in s for a in s for b in s)

    def is_normal(self, S: Sequence[int]) -> bool:
        s = set(S)
        return all(self.conj(a, g) in s for a in s for g in range(self.order))

    def derived_subgroup(self, S: Sequence[int] | None = None) -> tuple[int, ...]:
        S = range(self.order) if S is None else S
        return self.closure([self.comm(a, b) for a in S for b in S])

    def commutator_subgroup(self, A: Sequence[int], B: Sequence[int]) -> tuple[int, ...]:
        return self.closure([self.comm(a, b) for a in A for b in B])

    def power_subgroup(self, S: Sequence[int], q: int) -> tuple[int, ...]:
        return self.closure([self.pow(a, q) for a in S])

    def product_set(self, A: Sequence[int], B: Sequence[int]) -> tuple[int, ...]:
        return tuple(sorted({self.mul(a, b) for a in A for b in B}))

    def lower_central_series(self) -> list[tuple[int, ...]]:
        G = tuple(range(self.order))
        series = [G]
        while True:
            nxt = self.commutator_subgroup(series[-1], G)
            if nxt == series[-1]:
                return series
            series.append(nxt)

    @cached_property
    def nilpotency_class(self) -> int | None:
        series = self.lower_central_series()
        return len(series) - 1 if len(series[-1]) == 1 else None

    @cached_property
    def derived_length(self) -> int | None:
        S = tuple(range(self.order))
        length = 0
        while len(S) > 1:
            nxt = self.derived_subgroup(S)
            if nxt == S:
                return None
            S, length = nxt, length + 1
        return length

    def subgroup_table(self, S: Sequence[int], name: str | None = None) -> "FiniteGroupTable":
        """The subgroup `S` as a group in its own right (elements in sorted order)."""
        S = sorted(set(int(x) for x in S))
        pos = {x: i for i, x in enumerate(S)}
        P = np.array([[pos[int(self.product[a, b])] for b in S] for a in S], dtype=np.int64)
        return FiniteGroupTable(P, name=name or f"{self.name}[{len(S)}]",
                                labels=tuple(self.labels[x] for x in S))

    # conversions -------------------------------------------------------
    def to_presentation(self) -> FpPresentation:
        """Element-wise presentation: one generator per element, ``e_a e_b = e_ab``."""
        n = self.order
        rels = [(a + 1, b + 1, -(int(self.product[a, b]) + 1))
                for a in range(n) for b in range(n)]
        return FpPresentation.from_raw([f"e{i + 1}" for i in range(n)], rels)

    def dumps(self) -> str:
        lines = [f"order: {self.order}"]
        lines += [" ".join(str(int(v) + 1) for v in row) for row in self.product]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str, name: str = "G") -> "FiniteGroupTable":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines or not lines[0].startswith("order:"):
            raise GroupTableError("first line must be 'order: n'")
        n = int(lines[0].split(":", 1)[1])
        rows = [[int(v) - 1 for v in ln.split()] for ln in lines[1:]]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise GroupTableError(f"expected {n} rows of {n} entries")
        return cls(np.array(rows), name=name)


def metacyclic(m: int, s: int, t: int, r: int, names=("x", "y"), name="G") -> FiniteGroupTable:
    """``<x, y | x^m, y^s = x^t, x^y = x^r>`` with elements ``y^b x^a``.

    Element ``y^b x^a`` has index ``b*m + a``.
    """
    if gcd(r, m) != 1 or pow(r, s, m) != 1 % m or (t * (r - 1)) % m:
        raise GroupTableError(f"inconsistent metacyclic parameters {(m, s, t, r)}")
    n = m * s
    P = np.empty((n, n), dtype=np.int64)
    rpow = [pow(r, d, m) for d in range(s)]
    for b in range(s):
        for a in range(m):
            for d in range(s):
                for c in range(m):
                    e = a * rpow[d] + c
                    bb = b + d
                    if bb >= s:
                        bb -= s
                        e += t
                    P[b * m + a, d * m + c] = bb * m + e % m
    xn, yn = names

    def label(b, a):
        parts = []
        if b:
            parts.append(yn if b == 1 else f"{yn}^{b}")
        if a:
            parts.append(xn if a == 1 else f"{xn}^{a}")
        return " ".join(parts) or "1"

    labels = tuple(label(b, a) for b in range(s) for a in range(m))
    gens = {xn: 1 % n} if s == 1 else {xn: 1 % m, yn: m}
    return FiniteGroupTable(P, name=name, gens=gens, labels=labels)


def abelian(orders: Sequence[int], name=None) -> FiniteGroupTable:
    orders = [int(d) for d in orders]
    if any(d < 1 for d in orders):
        raise GroupTableError("cyclic factor orders must be positive")
    names = [f"a{i + 1}" for i in range(len(orders))]
    elems = np.array(np.meshgrid(*[np.arange(d) for d in orders], indexing="ij")).reshape(len(orders), -1).T \
        if orders else np.zeros((1, 0), dtype=np.int64)
    radix = np.cumprod([1] + orders[:0:-1])[::-1] if orders else np.array([])
    n = len(elems)
    P = np.empty((n, n), dtype=np.int64)
    mods = np.array(orders)
    for i in range(n):
        s = (elems[i] + elems) % mods if orders else elems
        P[i] = s @ radix if orders else 0
    labels = []
    for v in elems:
        parts = [(nm if e == 1 else f"{nm}^{e}") for nm, e in zip(names, v) if e]
        labels.append(" ".join(parts) or "1")
    gens = {}
    for i, nm in enumerate(names):
        v = np.zeros(len(orders), dtype=np.int64)
        v[i] = 1 % orders[i]
        gens[nm] = int(v @ radix)
    return FiniteGroupTable(P, name=name or f"abelian:{orders}", gens=gens, labels=tuple(labels))


_SPEC = re.compile(r"^\s*([a-z0-9]+)\s*:\s*(.+?)\s*$")


def group_from_spec(spec: str) -> FiniteGroupTable:
    """Built-in groups: ``cyclic:n``, ``dihedral:n`` (order 2n), ``quaternion:8``,
    ``quaternion:16``, ``abelian:[d1,d2,...]``, ``modular:16`` and
    ``dihedral2:k`` (dihedral of order 2^k).  A path to a table file also works.
    """
    m = _SPEC.match(spec)
    if not m:
        try:
            with open(spec, encoding="utf-8") as fh:
                return FiniteGroupTable.loads(fh.read(), name=spec)
        except OSError:
            raise GroupTableError(f"unknown group spec {spec!r}") from None
    kind, arg = m.groups()
    try:
        if kind == "abelian":
            vals = [int(v) for v in arg.strip("[]").split(",") if v.strip()]
            return abelian(vals, name=f"abelian:[{','.join(map(str, vals))}]")
        k = int(arg)
    except ValueError:
        raise GroupTableError(f"bad group spec {spec!r}") from None
    if kind == "cyclic":
        return metacyclic(k, 1, 0, 1, names=("x", "y"), name=f"cyclic:{k}")
    if kind == "dihedral":
        if k < 1:
            raise GroupTableError("dihedral:n needs n >= 1")
        return metacyclic(k, 2, 0, -1 % k if k > 1 else 0, names=("r", "s"), name=f"dihedral:{k}")
    if kind == "dihedral2":
        if k < 2:
            raise GroupTableError("dihedral2:k needs k >= 2")
        return group_from_spec(f"dihedral:{2 ** (k - 1)}")
    if kind == "quaternion":
        if k < 8 or k & (k - 1):
            raise GroupTableError("quaternion:n needs n a power of 2, n >= 8")
        m2 = k // 2
        return metacyclic(m2, 2, m2 // 2, m2 - 1, names=("x", "y"), name=f"quaternion:{k}")
    if kind == "modular":
        if k < 16 or k & (k - 1):
            raise GroupTableError("modular:n needs n a power of 2, n >= 16")
        m2 = k // 2
        return metacyclic(m2, 2, 0, m2 // 2 + 1, names=("x", "y"), name=f"modular:{k}")
    raise GroupTableError(f"unknown group family {kind!r}")


def parse_subgroup_gens(L: FiniteGroupTable, text: str) -> list[int]:
    """Comma-separated element descriptions (see `FiniteGroupTable.parse_element`)."""
    out = []
    for part in text.split(","):
        if part.strip():
            try:
                out.append(L.parse_element(part))
            except MalformedWordError as exc:
                raise GroupTableError(str(exc)) from None
    return out


@dataclass(frozen=True, eq=False)
class EmbeddedPair:
    """Normal subgroups G, H of L; actions are conjugation inside L."""

    L: FiniteGroupTable
    G: tuple[int, ...]
    H: tuple[int, ...]

    def __post_init__(self):
        for nm in ("G", "H"):
            S = tuple(sorted(set(int(x) for x in getattr(self, nm))))
            object.__setattr__(self, nm, S)
            if not self.L.is_subgroup(S):
                raise GroupTableError(f"{nm} is not a subgroup of {self.L.name}")
            if not self.L.is_normal(S):
                raise GroupTableError(f"{nm} is not normal in {self.L.name}")
        object.__setattr__(self, "K", tuple(sorted(set(self.G) & set(self.H))))

    @classmethod
    def from_generators(cls, L: FiniteGroupTable, G_gens, H_gens) -> "EmbeddedPair":
        return cls(L, L.closure(G_gens), L.closure(H_gens))

    @classmethod
    def diagonal(cls, L: FiniteGroupTable) -> "EmbeddedPair":
        full = tuple(range(L.order))
        return cls(L, full, full)

    @property
    def is_diagonal(self) -> bool:
        return len(self.G) == len(self.H) == self.L.order

    def describe(self) -> str:
        if self.is_diagonal:
            return self.L.name
        return f"{self.L.name}|{len(self.G)}|{len(self.H)}"
