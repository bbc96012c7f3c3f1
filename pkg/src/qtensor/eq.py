"""The q-central extension E_q(G) of a finite pc group and what it yields.

For a consistent presentation of G with relations r_1..r_l (tagged in the
order of `PcPresentation.relation_labels`) the naive extension appends one
free central tail t_i to each relation.  Its consistency relations,
together with t_i^q = 1, present the tail subgroup; Smith normal form
turns them into new central generators s_j of order d_j | q.  From E_q(G)
the subgroup W = E'E^q gives G ^q G, equal to G (x)q G when G is
q-perfect, and the kernel of W -> G is H_2(G, Z_q).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from . import analysis as an
from .abelian import is_q_perfect, q_abelianization, smith_form
from .pc import PcError, PcPresentation, Relation, Vec
from .perm import PermGroup


class NotQPerfectError(ValueError):
    def __init__(self, q: int, obstruction: tuple[int, ...]):
        super().__init__(
            f"group is not {q}-perfect: G/G'G^{q} has invariants {list(obstruction)}; "
            "use the enumeration route (--route enum)")
        self.obstruction = obstruction


def naive_Eq(g: PcPresentation) -> PcPresentation:
    """G with one free central tail per relation (tails in tagging order)."""
    if g.tails:
        raise PcError("input already has tails")
    labels = g.relation_labels()
    l = len(labels)
    unit = lambda r: tuple(int(r == k) for k in range(l))
    pt, ct = {}, {}
    for r, (kind, idx) in enumerate(labels):
        if kind == "pow":
            pt[idx[0]] = unit(r)
        else:
            ct[idx] = unit(r)
    conj = {(j, i): g.conj(j, i) for j in range(g.n) for i in range(j)}
    return PcPresentation(g.exponents, g.powers, conj, g.names, l, pt, ct)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    d, x, y = _egcd(b, a % b)
    return d, y, x - (a // b) * y


@dataclass(eq=False)
class EqExtension:
    base: PcPresentation
    q: int
    naive: PcPresentation
    relations: list[Relation]
    V: list[list[int]]                 # old tag t_i = prod_j s_j^V[i][j]
    diagonal: tuple[int, ...]          # all invariant factors, including 1s
    kept: tuple[int, ...]              # columns of V with d_j > 1
    result: PcPresentation

    @property
    def tail_orders(self) -> tuple[int, ...]:
        """Orders d_j of the new central generators (invariant-factor order)."""
        return tuple(self.diagonal[j] for j in self.kept)

    @property
    def ntags(self) -> int:
        return len(self.V)

    def tail_coords(self, tag_vector: Sequence[int]) -> tuple[int, ...]:
        u = [sum(tag_vector[i] * self.V[i][j] for i in range(self.ntags)) for j in self.kept]
        return tuple(x % d for x, d in zip(u, self.tail_orders))

    def tag_word(self, i: int) -> Vec:
        """Normal vector (in `result`) of the tag t_i, 1-based."""
        e = [0] * self.ntags
        e[i - 1] = 1
        return (0,) * self.base.n + self.tail_coords(e)

    def tag_orders(self) -> tuple[int, ...]:
        out = []
        for i in range(self.ntags):
            o = 1
            for x, d in zip(self.tag_word(i + 1)[self.base.n:], self.tail_orders):
                k = d // gcd(d, x)
                o = o * k // gcd(o, k)
            out.append(o)
        return tuple(out)

    @property
    def order(self) -> int:
        return self.result.order


def build_Eq(g: PcPresentation, q: int) -> EqExtension:
    if q < 1:
        raise ValueError("E_q needs q >= 1; for q = 0 use the enumeration route")
    bad = [r for r in g.check_consistency()]
    if bad:
        raise PcError(f"base presentation is inconsistent: {bad[0].test}")
    naive = naive_Eq(g)
    rels = naive.check_consistency()
    if any(r.tail is None for r in rels):
        raise PcError("naive extension has a non-central consistency failure")
    l = naive.tails
    rows = [list(r.tail) for r in rels] + [[q * int(i == j) for j in range(l)] for i in range(l)]
    diag, U, V = smith_form(rows, len(rows), l)
    diag = tuple(int(d) for d in diag)
    kept = tuple(j for j in range(l) if diag[j] != 1)
    m = len(kept)
    orders = [diag[j] for j in kept]

    def coords(t):
        u = [sum(t[i] * V[i][j] for i in range(l)) for j in kept]
        return tuple(x % d for x, d in zip(u, orders))

    n = g.n
    powers = {i: tuple(g.powers[i]) + coords(naive.power_tails[i]) for i in range(n)}
    conj = {(j, i): tuple(g.conj(j, i)) + coords(naive.conj_tail(j, i))
            for j in range(n) for i in range(j)}
    names = tuple(g.names) + tuple(f"s{j + 1}" for j in range(m))
    result = PcPresentation(list(g.exponents) + orders, powers, conj, names)
    leftover = result.check_consistency()
    if leftover:
        raise AssertionError(f"E_q presentation is not consistent: {leftover[0].test}")
    return EqExtension(g, q, naive, rels, V, diag, kept, result)


# induced subgroups ------------------------------------------------------------------
def _depth(v: Vec) -> int:
    for k, a in enumerate(v):
        if a:
            return k
    return len(v)


class InducedSequence:
    """Canonical generating sequence of a subgroup of a finite pc group.

    ``table[d]`` holds the element of depth d whose leading exponent b_d
    divides e_d; every subgroup element is uniquely prod_d table[d]^c_d
    with 0 <= c_d < e_d / b_d.
    """

    def __init__(self, p: PcPresentation, gens: Sequence[Vec] = (), normalizers: Sequence[Vec] = ()):
        self.p = p
        self.table: dict[int, Vec] = {}
        self.normalizers = list(normalizers)
        self.add(gens)

    def _reduce(self, x: Vec) -> Vec:
        p = self.p
        while any(x):
            d = _depth(x)
            y = self.table.get(d)
            if y is None or x[d] % y[d]:
                return x
            x = p.mul(p.power(y, -(x[d] // y[d])), x)
        return x

    def add(self, gens: Sequence[Vec]) -> None:
        p = self.p
        queue = list(gens)
        while queue:
            x = self._reduce(tuple(queue.pop()))
            if not any(x):
                continue
            d, e = _depth(x), p.exponents[_depth(x)]
            y = self.table.get(d)
            if y is None:
                g0, u, _ = _egcd(x[d], e)
                z = p.power(x, u % e)
                queue.append(x)
            else:
                g0, u, v = _egcd(x[d], y[d])
                z = p.mul(p.power(x, u), p.power(y, v))
                queue.extend([x, y])
            assert z[d] == g0
            self.table[d] = z
            queue.append(p.power(z, e // z[d]))
            queue.extend(p.comm(z, w) for w in self.table.values())
            queue.extend(p.mul(p.mul(p.inv(h), z), h) for h in self.normalizers)

    @property
    def depths(self) -> list[int]:
        return sorted(self.table)

    @property
    def sequence(self) -> list[Vec]:
        return [self.table[d] for d in self.depths]

    @property
    def relative_orders(self) -> list[int]:
        return [self.p.exponents[d] // self.table[d][d] for d in self.depths]

    @property
    def order(self) -> int:
        return int(np.prod(self.relative_orders, dtype=object)) if self.table else 1

    def decompose(self, x: Vec) -> list[int] | None:
        """Exponents c with x = prod table[d]^c_d, or None if x is outside."""
        p, out = self.p, []
        for d in self.depths:
            if _depth(x) < d:
                return None
            z = self.table[d]
            c = x[d] // z[d] if x[d] % z[d] == 0 else None
            if c is None:
                return None
            out.append(c)
            x = p.mul(p.power(z, -c), x)
        return out if not any(x) else None

    def contains(self, x: Vec) -> bool:
        return self.decompose(x) is not None

    def elements(self) -> list[Vec]:
        p = self.p
        out = [p.identity()]
        for z, r in reversed(list(zip(self.sequence, self.relative_orders))):
            pows = [p.identity()]
            for _ in range(r - 1):
                pows.append(p.mul(pows[-1], z))
            out = [p.mul(a, b) for a in pows for b in out]
        return out

    def presentation(self) -> PcPresentation:
        """Induced pc presentation on the sequence (consistent by construction)."""
        p, seq, rel = self.p, self.sequence, self.relative_orders
        m = len(seq)
        if m == 0:
            raise PcError("trivial subgroup has no pc presentation")
        powers = {k: self.decompose(p.power(seq[k], rel[k])) for k in range(m)}
        conj = {}
        for k in range(m):
            zk_inv = p.inv(seq[k])
            for l in range(k + 1, m):
                c = self.decompose(p.mul(p.mul(zk_inv, seq[l]), seq[k]))
                if c != [int(i == l) for i in range(m)]:
                    conj[(l, k)] = c
        return PcPresentation(rel, powers, conj)


@dataclass(eq=False)
class WData:
    """W = E'E^q inside E_q(G)."""

    ext: EqExtension
    induced: InducedSequence
    presentation: PcPresentation | None
    handle: an.SubgroupHandle           # W inside the regular representation of E_q(G)
    rep: object                         # that regular representation

    @property
    def order(self) -> int:
        return self.induced.order


def derived_power_subgroup(e: EqExtension, verify: bool = True) -> WData:
    """Induced sequence and presentation of W = <[g_i, g_j], g_k^q>^E."""
    E = e.result
    gens = [E.gen(i + 1) for i in range(E.n)]
    seeds = [E.comm(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    seeds += [E.power(a, e.q) for a in gens]
    ind = InducedSequence(E, seeds, normalizers=gens)
    pres = ind.presentation() if ind.table else None
    rep = E.regular_representation() if (verify and E.order <= an.EXPLICIT_MAX_ORDER) else None
    handle = None
    if rep is not None:
        images = [E.element_perm(rep, z) for z in ind.sequence]
        handle = an.generated(rep, images)
        if handle.order != ind.order:
            raise AssertionError("induced sequence order disagrees with the regular representation")
        if pres is not None:
            # the induced presentation must map homomorphically onto the images
            an.GroupHom(pres.to_presentation(), rep, images)
            if pres.check_consistency():
                raise AssertionError("induced presentation is not consistent")
    return WData(e, ind, pres, handle, rep)


def schur_multiplier_from(w: WData) -> tuple[int, ...]:
    """Invariants of ker(W -> G) (tails only): H_2(G, Z_q) for q-perfect G."""
    n = w.ext.base.n
    E = w.ext.result
    if w.handle is None:
        raise an.BudgetExceeded("E_q(G) too large for the explicit kernel computation")
    kern = [x for x in w.induced.elements() if not any(x[:n])]
    rows = np.array([E.element_perm(w.rep, x) for x in kern])
    order = np.argsort([any(x) for x in kern], kind="stable")   # identity first
    s = an.SubgroupHandle.from_elements(w.rep, rows[order])
    return an.abelian_invariants(s)


def require_q_perfect(g: PcPresentation, q: int) -> None:
    if not is_q_perfect(g, q):
        raise NotQPerfectError(q, q_abelianization(g, q))


# reports --------------------------------------------------------------------------
def _w_handle(w: WData) -> an.SubgroupHandle:
    """W as an explicit permutation group (inside E_q(G) when it was small
    enough, else in the regular representation of its own presentation)."""
    if w.handle is not None:
        return w.handle
    if w.presentation is None:
        triv = PermGroup([np.zeros(1, dtype=np.int64)])
        return an.whole(triv)
    return an.whole(w.presentation.regular_representation())


def exterior_square_pc(g: PcPresentation, q: int):
    """Report on G ^q G = E_q(G)'E_q(G)^q."""
    from .report import GroupReport
    t0 = time.perf_counter()
    ext = build_Eq(g, q)
    t1 = time.perf_counter()
    w = derived_power_subgroup(ext)
    t2 = time.perf_counter()
    rep = GroupReport.from_handle(_w_handle(w), "pc", q)
    rep.timings = {"build_Eq": t1 - t0, "subgroup": t2 - t1, "analysis": time.perf_counter() - t2}
    return rep


def tensor_square_pc(g: PcPresentation, q: int):
    """G (x)q G, equal to the exterior square for q-perfect G."""
    require_q_perfect(g, q)
    return exterior_square_pc(g, q)


def schur_multiplier_q(g: PcPresentation, q: int) -> tuple[int, ...]:
    """Invariants of H_2(G, Z_q) as the kernel of W -> G (G q-perfect)."""
    require_q_perfect(g, q)
    if g.n == 0:
        return ()
    return schur_multiplier_from(derived_power_subgroup(build_Eq(g, q)))
