"""Concrete realizations of eta^q(G, H) as permutation groups.

The map eta -> H killing G and the hats shows that H^phi meets the normal
subgroup Upsilon G trivially, so Upsilon G acts regularly on the cosets of
H^phi.  Adding the regular action of L through rho (which is injective on
H^phi) gives a faithful representation of all of eta of degree
``|Upsilon| |G| + |L|``.  Upsilon itself acts freely, and its orbit of the
base coset is a regular representation of degree ``|Upsilon|``.

Only one enumeration (over H^phi) is ever needed per instance.
"""

from __future__ import annotations

import logging
import re
import time
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from . import analysis as an
from .eta import EtaPresentation, build_eta_q, build_tau_q, named_subgroup_words
from .groups import EmbeddedPair, FiniteGroupTable, GroupTableError, group_from_spec, parse_subgroup_gens
from .perm import PermGroup
from .todd_coxeter import DEFAULT_MAX_COSETS, CosetLimitExceeded, CosetTable, enumerate_cosets
from .words import Word, comm

log = logging.getLogger(__name__)


# pair specs ---------------------------------------------------------------------
def pair_from_spec(spec: str) -> EmbeddedPair:
    """``L`` for the diagonal pair, or ``L/G-gens/H-gens`` with comma-separated
    element descriptions, e.g. ``dihedral:4/r/r^2,s``."""
    parts = spec.split("/")
    L = group_from_spec(parts[0])
    if len(parts) == 1:
        return EmbeddedPair.diagonal(L)
    if len(parts) != 3:
        raise GroupTableError(f"pair spec {spec!r} must be L or L/G-gens/H-gens")
    return EmbeddedPair.from_generators(L, parse_subgroup_gens(L, parts[1]),
                                        parse_subgroup_gens(L, parts[2]))


# upsilon --------------------------------------------------------------------------
@dataclass(eq=False)
class UpsilonRep:
    """Upsilon in its regular representation (orbit of the base coset), with
    the image under rho appended as a second block of |L| points."""

    group: PermGroup
    handle: an.SubgroupHandle
    orbit: np.ndarray
    degree_upsilon: int
    L: FiniteGroupTable

    def rho(self, x: np.ndarray) -> int:
        d = self.degree_upsilon
        return int(x[d + self.L.identity]) - d

    def upsilon_part(self) -> an.SubgroupHandle:
        """The same subgroup acting on the orbit only (drops the rho block)."""
        d = self.degree_upsilon
        rows = self.handle.elements[:, :d]
        amb = PermGroup([g[:d] for g in self.group.gens], self.group.names)
        return an.SubgroupHandle.from_elements(amb, rows)


@dataclass(eq=False)
class RealizedEta:
    eta: EtaPresentation
    table: CosetTable
    seconds: float

    @property
    def pair(self) -> EmbeddedPair:
        return self.eta.pair

    @property
    def L(self) -> FiniteGroupTable:
        return self.eta.pair.L

    @property
    def q(self) -> int:
        return self.eta.q

    @property
    def index(self) -> int:
        """Number of cosets of H^phi."""
        return self.table.num_cosets

    @property
    def order(self) -> int:
        return self.index * len(self.pair.H)

    @property
    def upsilon_order(self) -> int:
        n, g = self.index, len(self.pair.G)
        if n % g:
            raise AssertionError("index of H^phi is not a multiple of |G|")
        return n // g

    # the faithful representation ------------------------------------------------
    @cached_property
    def rep(self) -> PermGroup:
        L, t = self.L, self.table
        d = t.num_cosets
        rho = self.eta.rho_images()
        perms = [np.concatenate([t.table[:, 2 * i].astype(np.int64),
                                 L.product[:, rho[i]].astype(np.int64) + d])
                 for i in range(self.eta.ngens)]
        return PermGroup(perms, self.eta.base.generators)

    @property
    def coset_degree(self) -> int:
        return self.table.num_cosets

    def rho(self, x: np.ndarray) -> int:
        d = self.coset_degree
        return int(x[d + self.L.identity]) - d

    def word(self, w: Word) -> np.ndarray:
        return self.rep.evaluate(w)

    def X(self, g: int) -> np.ndarray:
        return self.rep.gens[self.eta.x(g) - 1]

    def Y(self, h: int) -> np.ndarray:
        return self.rep.gens[self.eta.y(h) - 1]

    def Khat(self, k: int) -> np.ndarray:
        return self.rep.gens[self.eta.k(k) - 1]

    def generating_perms(self) -> list[np.ndarray]:
        """A small generating set of eta: G and H^phi on generators of G, H and
        the hats of generators of K."""
        L, p = self.L, self.pair
        out = [self.X(g) for g in L.generating_set(p.G)] + [self.Y(h) for h in L.generating_set(p.H)]
        if self.q >= 1:
            out += [self.Khat(k) for k in L.generating_set(p.K)]
        return out or [self.rep.identity()]

    def subgroup(self, which: str, budget: int = an.EXPLICIT_MAX_ORDER) -> an.SubgroupHandle:
        return an.close_subgroup(self.rep, named_subgroup_words(self.eta, which), budget)

    def whole(self, budget: int = an.EXPLICIT_MAX_ORDER) -> an.SubgroupHandle:
        s = an.generated(self.rep, self.generating_perms(), budget)
        if s.order != self.order:
            raise AssertionError(f"representation is not faithful: {s.order} != {self.order}")
        return s

    def is_central(self, x: np.ndarray) -> bool:
        A = self.rep
        return all(np.array_equal(A.mul(x, g), A.mul(g, x)) for g in self.generating_perms())

    # upsilon ------------------------------------------------------------------------
    @cached_property
    def upsilon(self) -> UpsilonRep:
        t, L, e = self.table, self.L, self.eta
        d = t.num_cosets
        words = named_subgroup_words(e, "Upsilon")
        full = [self.word(w) for w in words]
        # orbit of the base coset under Upsilon
        seen = np.zeros(d, dtype=bool)
        seen[0] = True
        frontier = np.array([0])
        order = [frontier]
        while len(frontier):
            nxt = np.unique(np.concatenate([g[frontier] for g in full])) if full else frontier[:0]
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            order.append(nxt)
            frontier = nxt
        orbit = np.concatenate(order)
        if len(orbit) != self.upsilon_order:
            raise AssertionError(f"Upsilon orbit has {len(orbit)} points, expected {self.upsilon_order}")
        pos = np.full(d, -1, dtype=np.int64)
        pos[orbit] = np.arange(len(orbit))
        m = len(orbit)
        perms = []
        for g in full:
            part = pos[g[orbit]]
            rho_part = g[d:] - d + m
            perms.append(np.concatenate([part, rho_part]))
        names = [e.base.format_word(w) for w in words]
        if not perms:
            perms, names = [np.arange(m + L.order)], ["1"]
        grp = PermGroup(perms, names)
        h = an.generated(grp, perms)
        if h.order != m:
            raise AssertionError("Upsilon does not act regularly on its orbit")
        return UpsilonRep(grp, h, orbit, m, L)


def realize(e: EtaPresentation, max_cosets: int = DEFAULT_MAX_COSETS, strategy: str = "hlt") -> RealizedEta:
    L = e.pair.L
    sub = [(e.y(h),) for h in L.generating_set(e.pair.H)]
    t0 = time.perf_counter()
    t = enumerate_cosets(e.base, sub, max_cosets, strategy)
    if not t.complete:
        raise CosetLimitExceeded(f"{e.describe()}: more than {max_cosets} cosets of H^phi")
    dt = time.perf_counter() - t0
    log.info("%s: %d cosets of H^phi in %.2fs", e.describe(), t.num_cosets, dt)
    return RealizedEta(e, t, dt)


@lru_cache(maxsize=96)
def realized(spec: str, q: int, tau: bool = False, max_cosets: int = DEFAULT_MAX_COSETS,
             strategy: str = "hlt", economical: bool = True) -> RealizedEta:
    """Cached realization of eta^q (or tau^q) for a pair spec."""
    pair = _pair(spec)
    build = build_tau_q if tau else build_eta_q
    return realize(build(pair, q, economical=economical), max_cosets, strategy)


@lru_cache(maxsize=64)
def _pair(spec: str) -> EmbeddedPair:
    return pair_from_spec(spec)


def canonical_spec(spec: str) -> str:
    return re.sub(r"\s+", "", spec)
