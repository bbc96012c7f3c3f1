"""Element-wise finite presentations of eta^q(G, H), nu^q(G) and tau^q(G, H).

One generator per element: ``x<i>`` for the copy of ``G``, ``y<i>`` for
the copy ``H^phi`` and, when ``q >= 1``, ``k<i>`` for the hat symbol of
``i`` in ``K = G n H``; ``i`` is the 1-based element number in ``L``.

Relator families, in this order and each in lexicographic order of its
element tuple:

==========  ====================================================  ===================
family      relator                                               instances
==========  ====================================================  ===================
G-table     ``x_a x_b x_ab^-1``                                   ``|G|^2``
H-table     ``y_a y_b y_ab^-1``                                   ``|H|^2``
s1          ``[x, y^phi]^x1 [x^x1, (y^x1)^phi]^-1``               ``|G|^2 |H|``
s2          ``[x, y^phi]^(y1^phi) [x^y1, (y^y1)^phi]^-1``         ``|G| |H|^2``
hat-G       ``g^-1 k^ g (k^g)^^-1``                               ``|K| |G|``
hat-H       ``(h^phi)^-1 k^ h^phi (k^h)^^-1``                     ``|K| |H|``
hat-T       ``k^-1 [g, h^phi] k^ [g^(k^q), (h^(k^q))^phi]^-1``    ``|K| |G| |H|``
hat-prod    ``k^-1 (kk1)^ k1^-1 (prod_i [k, (k1^-i)^phi]^(k^(q-1-i)))^-1``  ``|K|^2``
hat-comm    ``[k^, k1^] [k^q, (k1^q)^phi]^-1``                    ``|K|^2``
hat-power   ``[g, h]^ [g, h^phi]^-q``                             ``|G| |H|``
delta       ``[k, k^phi]`` (tau only)                             ``|K|``
==========  ====================================================  ===================

The hat families are absent when ``q = 0``.  All instances are kept, even
ones that are trivial or repeated, so counts follow the table exactly.

``economical=True`` keeps the generators but lets the conjugating element
of s1, s2, hat-G, hat-H and the hat of hat-T run over a generating set of
G, H or K only.  Each of those families says that conjugation by one
element acts in a prescribed way, and such statements compose, so the two
presentations define the same group; the test suite compares both on the
small catalog.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from .groups import EmbeddedPair, FiniteGroupTable
from .words import FpPresentation, Word, comm, conj, free_reduce, inverse, mul, power

HAT_FAMILIES = ("hat-G", "hat-H", "hat-T", "hat-prod", "hat-comm", "hat-power")
FAMILIES = ("G-table", "H-table", "s1", "s2") + HAT_FAMILIES + ("delta",)

SUBGROUPS = ("Upsilon", "T", "K", "Delta", "GHphi", "G", "Hphi")


@dataclass(frozen=True, eq=False)
class EtaPresentation:
    base: FpPresentation
    pair: EmbeddedPair
    q: int
    tagging: tuple[str, ...]          # "G", "H" or "K" per generator
    element_of: tuple[int, ...]       # L element per generator (0-based)
    families: tuple[tuple[str, int], ...]   # (family, count) in relator order
    tau: bool = False
    economical: bool = False

    @property
    def ngens(self) -> int:
        return self.base.ngens

    @property
    def L(self) -> FiniteGroupTable:
        return self.pair.L

    def x(self, g: int) -> int:
        """Generator index (1-based) of the G-copy of L-element `g`."""
        return self._index[("G", g)]

    def y(self, h: int) -> int:
        return self._index[("H", h)]

    def k(self, k: int) -> int:
        return self._index[("K", k)]

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {(t, e): i + 1 for i, (t, e) in enumerate(zip(self.tagging, self.element_of))}
            object.__setattr__(self, "_idx", idx)
        return idx

    def family_slice(self, family: str) -> slice:
        start = 0
        for name, count in self.families:
            if name == family:
                return slice(start, start + count)
            start += count
        return slice(start, start)

    def rho_images(self) -> list[int]:
        """Images in L of ``g -> g, h^phi -> h, k^ -> k^q``, one per generator."""
        L = self.L
        return [L.pow(e, self.q) if t == "K" else e for t, e in zip(self.tagging, self.element_of)]

    def describe(self) -> str:
        name = "tau" if self.tau else ("nu" if self.pair.is_diagonal else "eta")
        return f"{name}^{self.q}({self.pair.describe()})"


def expected_counts(nG: int, nH: int, nK: int, q: int, tau: bool = False) -> tuple[int, int]:
    """Closed-form ``(generators, relators)`` counts of the builders."""
    gens = nG + nH + (nK if q >= 1 else 0)
    rels = nG * nG + nH * nH + nG * nG * nH + nG * nH * nH
    if q >= 1:
        rels += nK * nG + nK * nH + nK * nG * nH + 2 * nK * nK + nG * nH
    if tau:
        rels += nK
    return gens, rels


def _build(pair: EmbeddedPair, q: int, tau: bool, economical: bool = False) -> EtaPresentation:
    if q < 0:
        raise ValueError("q must be non-negative")
    L = pair.L
    G, H, K = pair.G, pair.H, (pair.K if q >= 1 else ())
    if economical:
        cG, cH, cK = (L.generating_set(S) for S in (G, H, K))
    else:
        cG, cH, cK = G, H, K
    tagging = ["G"] * len(G) + ["H"] * len(H) + ["K"] * len(K)
    element_of = list(G) + list(H) + list(K)
    names = [f"x{g + 1}" for g in G] + [f"y{h + 1}" for h in H] + [f"k{k + 1}" for k in K]
    X = {g: (i + 1,) for i, g in enumerate(G)}
    Y = {h: (len(G) + i + 1,) for i, h in enumerate(H)}
    Kh = {k: (len(G) + len(H) + i + 1,) for i, k in enumerate(K)}
    m, cj, cm, inv = L.mul, L.conj, L.comm, L.inv

    families: list[tuple[str, int]] = []
    rels: list[Word] = []

    def add(family, words):
        words = [free_reduce(w) for w in words]
        families.append((family, len(words)))
        rels.extend(words)

    add("G-table", [mul(X[a], X[b], inverse(X[m(a, b)])) for a in G for b in G])
    add("H-table", [mul(Y[a], Y[b], inverse(Y[m(a, b)])) for a in H for b in H])
    add("s1", [mul(conj(comm(X[x], Y[y]), X[x1]), inverse(comm(X[cj(x, x1)], Y[cj(y, x1)])))
               for x, y, x1 in product(G, H, cG)])
    add("s2", [mul(conj(comm(X[x], Y[y]), Y[y1]), inverse(comm(X[cj(x, y1)], Y[cj(y, y1)])))
               for x, y, y1 in product(G, H, cH)])
    if q >= 1:
        add("hat-G", [mul(inverse(X[g]), Kh[k], X[g], inverse(Kh[cj(k, g)]))
                      for k, g in product(K, cG)])
        add("hat-H", [mul(inverse(Y[h]), Kh[k], Y[h], inverse(Kh[cj(k, h)]))
                      for k, h in product(K, cH)])
        hat_t = []
        for k, g, h in product(cK, G, H):
            kq = L.pow(k, q)
            hat_t.append(mul(inverse(Kh[k]), comm(X[g], Y[h]), Kh[k],
                             inverse(comm(X[cj(g, kq)], Y[cj(h, kq)]))))
        add("hat-T", hat_t)
        hat_p = []
        for k, k1 in product(K, K):
            prod_word: Word = ()
            for i in range(1, q):
                term = conj(comm(X[k], Y[L.pow(k1, -i)]), X[L.pow(k, q - 1 - i)])
                prod_word = mul(prod_word, term)
            hat_p.append(mul(inverse(Kh[k]), Kh[m(k, k1)], inverse(Kh[k1]), inverse(prod_word)))
        add("hat-prod", hat_p)
        add("hat-comm", [mul(comm(Kh[k], Kh[k1]), inverse(comm(X[L.pow(k, q)], Y[L.pow(k1, q)])))
                         for k, k1 in product(K, K)])
        add("hat-power", [mul(Kh[cm(g, h)], power(comm(X[g], Y[h]), -q)) for g, h in product(G, H)])
    if tau:
        add("delta", [comm(X[k], Y[k]) for k in pair.K])
    base = FpPresentation(tuple(names), tuple(rels))
    return EtaPresentation(base, pair, q, tuple(tagging), tuple(element_of), tuple(families),
                          tau, economical)


def build_eta_q(pair: EmbeddedPair, q: int, economical: bool = False) -> EtaPresentation:
    return _build(pair, q, tau=False, economical=economical)


def build_nu_q(g: FiniteGroupTable, q: int, economical: bool = False) -> EtaPresentation:
    return _build(EmbeddedPair.diagonal(g), q, tau=False, economical=economical)


def build_tau_q(pair: EmbeddedPair, q: int, economical: bool = False) -> EtaPresentation:
    """eta^q(G, H) modulo ``Delta = <[k, k^phi] : k in K>``."""
    return _build(pair, q, tau=True, economical=economical)


def named_subgroup_words(e: EtaPresentation, which: str) -> list[Word]:
    """Generating words of a named subgroup.

    ``Upsilon`` = T K, ``T`` = [G, H^phi], ``K`` = hats, ``Delta`` =
    [k, k^phi], ``GHphi`` = G and H^phi together, ``G``, ``Hphi``, and
    ``Gamma-j``: all left-normed commutators of weight j in the generators.
    """
    pair = e.pair
    if which.startswith("Gamma-"):
        j = int(which.split("-", 1)[1])
        if j < 1:
            raise ValueError("Gamma-j needs j >= 1")
        gens = [(i,) for i in range(1, e.ngens + 1)]
        words = gens
        for _ in range(j - 1):
            words = [comm(w, g) for w in words for g in gens]
        return [w for w in words]
    T = [comm((e.x(g),), (e.y(h),)) for g in pair.G for h in pair.H]
    Kw = [(e.k(k),) for k in pair.K] if e.q >= 1 else []
    if which == "T":
        return T
    if which == "K":
        return Kw
    if which == "Upsilon":
        return T + Kw
    if which == "Delta":
        return [comm((e.x(k),), (e.y(k),)) for k in pair.K]
    if which == "G":
        return [(e.x(g),) for g in pair.G]
    if which == "Hphi":
        return [(e.y(h),) for h in pair.H]
    if which == "GHphi":
        return [(e.x(g),) for g in pair.G] + [(e.y(h),) for h in pair.H]
    raise ValueError(f"unknown subgroup {which!r}; choose from {SUBGROUPS} or Gamma-j")
