"""Finite power-conjugate presentations and collection from the left.

Generators ``g1..gn`` all have finite relative orders ``e_i``.  Elements
are exponent vectors ``(a_1, ..., a_n)`` with ``0 <= a_i < e_i`` standing
for the normal word ``g1^a1 ... gn^an``.  Relations:

* ``g_i^e_i = w_i`` with ``w_i`` a normal word in ``g_{i+1}..g_n``;
* ``g_j^(g_i) = c_ji`` for ``j > i``, a normal word in ``g_{i+1}..g_n``
  (missing ones default to ``g_j``).

A presentation may also carry free central *tails*: one infinite-order
central generator per relation scheme entry, recorded as an integer
vector attached to each relation.  Collection then returns the base
normal word together with the accumulated tail vector.  This is how the
naive extension of a group by its relators is represented before its
consistency relations are known.

Collection is from the left: the leftmost uncollected syllable is always
moved into place next, conjugating the already collected generators of
higher index past it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .perm import PermGroup
from .words import FpPresentation, MalformedWordError

Vec = tuple[int, ...]


class PcError(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    """An overlap whose two collected sides differ.

    `tail` is the difference lhs - rhs of tail vectors when the base parts
    agree (a relation among the central tails); it is None otherwise.
    """

    test: str
    lhs: tuple
    rhs: tuple
    tail: Vec | None


class PcPresentation:
    def __init__(self, exponents: Sequence[int], powers: dict | Sequence | None = None,
                 conjugates: dict | None = None, names: Sequence[str] | None = None,
                 tails: int = 0, power_tails: dict | None = None,
                 conjugate_tails: dict | None = None):
        """`exponents` are the relative orders; `powers[i]` and
        `conjugates[(j, i)]` (0-based, ``j > i``) are exponent vectors or
        ``{index: exponent}`` dicts.  Tail data, if any, is given per
        relation as integer vectors of length `tails`."""
        n = len(exponents)
        self.n = n
        self.exponents: Vec = tuple(int(e) for e in exponents)
        if any(e < 2 for e in self.exponents):
            raise PcError("relative orders must be at least 2 (infinite pc groups are not supported)")
        self.names = tuple(names) if names else tuple(f"g{i + 1}" for i in range(n))
        if len(self.names) != n or len(set(self.names)) != n:
            raise PcError("need n distinct generator names")
        powers = powers or {}
        if not isinstance(powers, dict):
            powers = dict(enumerate(powers))
        self.powers: list[Vec] = [self._vec(powers.get(i, ()), i, f"power of {self.names[i]}")
                                  for i in range(n)]
        self.conjugates: dict[tuple[int, int], Vec] = {}
        for (j, i), w in (conjugates or {}).items():
            if not 0 <= i < j < n:
                raise PcError(f"conjugate relation ({j + 1}, {i + 1}) needs j > i")
            self.conjugates[(j, i)] = self._vec(w, i, f"conjugate {self.names[j]}^{self.names[i]}")
        self.tails = int(tails)
        z = (0,) * self.tails
        self.power_tails = [tuple((power_tails or {}).get(i, z)) for i in range(n)]
        self.conjugate_tails = {k: tuple(v) for k, v in (conjugate_tails or {}).items()}
        for v in list(self.power_tails) + list(self.conjugate_tails.values()):
            if len(v) != self.tails:
                raise PcError("tail vectors must have one entry per tail")
        self._inverses: list[tuple[Vec, Vec]] | None = None

    # construction helpers --------------------------------------------------
    def _vec(self, w, i: int, what: str) -> Vec:
        if isinstance(w, dict):
            v = [0] * self.n
            for k, a in w.items():
                v[k] = a
        else:
            v = list(w) + [0] * (self.n - len(w)) if len(w) <= self.n else None
            if v is None:
                raise PcError(f"{what}: word too long")
        for k, a in enumerate(v):
            if a and k <= i:
                raise PcError(f"{what}: must involve only generators after {self.names[i]}")
            if not 0 <= a < self.exponents[k]:
                raise PcError(f"{what}: exponent of {self.names[k]} not in [0, {self.exponents[k]})")
        return tuple(v)

    def conj(self, j: int, i: int) -> Vec:
        """Normal vector of ``g_j^(g_i)`` (0-based, j > i)."""
        c = self.conjugates.get((j, i))
        if c is None:
            v = [0] * self.n
            v[j] = 1
            return tuple(v)
        return c

    def conj_tail(self, j: int, i: int) -> Vec:
        return self.conjugate_tails.get((j, i), (0,) * self.tails)

    @property
    def order(self) -> int:
        return int(np.prod(self.exponents, dtype=object)) if self.n else 1

    def identity(self) -> Vec:
        return (0,) * self.n

    def gen(self, i: int) -> Vec:
        """Generator ``g_i`` (1-based) as a normal vector."""
        v = [0] * self.n
        v[i - 1] = 1
        return tuple(v)

    # collection -------------------------------------------------------------
    @staticmethod
    def _push_word(stack: list, v: Sequence[int], times: int = 1) -> None:
        syl = [(k, a) for k, a in enumerate(v) if a]
        for _ in range(times):
            stack.extend(reversed(syl))

    def _run(self, v: list, t: list, stack: list) -> None:
        n, e = self.n, self.exponents
        while stack:
            i, a = stack.pop()
            if not any(v[i + 1:]):
                qd, r = divmod(v[i] + a, e[i])
                v[i] = r
                if qd:
                    self._push_word(stack, self.powers[i], qd)
                    if self.tails:
                        pt = self.power_tails[i]
                        for k in range(self.tails):
                            t[k] += qd * pt[k]
                continue
            if a > 1:
                stack.append((i, a - 1))
            suffix = [(j, v[j]) for j in range(i + 1, n) if v[j]]
            for j, _ in suffix:
                v[j] = 0
            v[i] += 1
            wrap = v[i] == e[i]
            if wrap:
                v[i] = 0
            for j, m in reversed(suffix):
                self._push_word(stack, self.conj(j, i), m)
                if self.tails:
                    ct = self.conj_tail(j, i)
                    for k in range(self.tails):
                        t[k] += m * ct[k]
            if wrap:
                self._push_word(stack, self.powers[i])
                if self.tails:
                    pt = self.power_tails[i]
                    for k in range(self.tails):
                        t[k] += pt[k]

    def _inverse_table(self) -> list[tuple[Vec, Vec]]:
        if self._inverses is None:
            inv: list = [None] * self.n
            for i in reversed(range(self.n)):
                # g_i^-1 = g_i^(e_i - 1) * (w_i t^a_i)^-1, with w_i^-1 built from known inverses
                v = [0] * self.n
                v[i] = self.exponents[i] - 1
                t = [-a for a in self.power_tails[i]]
                for k in reversed(range(self.n)):
                    iv, it = inv[k] if self.powers[i][k] else ((), ())
                    for _ in range(self.powers[i][k]):
                        stack: list = []
                        self._push_word(stack, iv)
                        t = [x + y for x, y in zip(t, it)]
                        self._run(v, t, stack)
                inv[i] = (tuple(v), tuple(t))
            self._inverses = inv
        return self._inverses

    def collect_full(self, word: Iterable, start: tuple | None = None) -> tuple[Vec, Vec]:
        """Collect a word of signed 1-based letters (or ``(gen, exp)``
        pairs); returns ``(base vector, tail vector)``."""
        v = list(start[0]) if start else [0] * self.n
        t = list(start[1]) if start else [0] * self.tails
        for letter in word:
            if isinstance(letter, tuple):
                g, x = letter
            else:
                g, x = abs(letter), (1 if letter > 0 else -1)
            if not isinstance(g, (int, np.integer)) or not 1 <= g <= self.n:
                raise MalformedWordError(f"unknown pc generator {g!r}")
            if x > 0:
                self._run(v, t, [(g - 1, int(x))])
            elif x < 0:
                iv, it = self._inverse_table()[g - 1]
                for _ in range(-x):
                    stack: list = []
                    self._push_word(stack, iv)
                    t = [a + b for a, b in zip(t, it)]
                    self._run(v, t, stack)
        return tuple(v), tuple(t)

    def collect(self, word: Iterable) -> Vec:
        return self.collect_full(word)[0]

    def mul_full(self, x: tuple, y: tuple) -> tuple[Vec, Vec]:
        v, t = list(x[0]), [a + b for a, b in zip(x[1], y[1])]
        stack: list = []
        self._push_word(stack, y[0])
        self._run(v, t, stack)
        return tuple(v), tuple(t)

    def mul(self, x: Vec, y: Vec) -> Vec:
        z = (0,) * self.tails
        return self.mul_full((x, z), (y, z))[0]

    def inv_full(self, x: tuple) -> tuple[Vec, Vec]:
        v, t = [0] * self.n, [-a for a in x[1]]
        inv = self._inverse_table()
        for k in reversed(range(self.n)):
            for _ in range(x[0][k]):
                iv, it = inv[k]
                stack: list = []
                self._push_word(stack, iv)
                t = [a + b for a, b in zip(t, it)]
                self._run(v, t, stack)
        return tuple(v), tuple(t)

    def inv(self, x: Vec) -> Vec:
        return self.inv_full((x, (0,) * self.tails))[0]

    def power(self, x: Vec, k: int) -> Vec:
        if k < 0:
            x, k = self.inv(x), -k
        out = self.identity()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def comm(self, a: Vec, b: Vec) -> Vec:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def element_order(self, x: Vec) -> int:
        k, y = 1, x
        while any(y):
            y = self.mul(y, x)
            k += 1
        return k

    # relator scheme ---------------------------------------------------------
    def relation_labels(self) -> list[tuple[str, tuple[int, ...]]]:
        """Relations in tagging order: for each i, conj(i, j) for j < i, then pow(i)."""
        out = []
        for i in range(self.n):
            for j in range(i):
                out.append(("conj", (i, j)))
            out.append(("pow", (i,)))
        return out

    def to_presentation(self) -> FpPresentation:
        rels = []
        for kind, idx in self.relation_labels():
            if kind == "pow":
                i, = idx
                lhs = [i + 1] * self.exponents[i]
                rhs = _vec_letters(self.powers[i])
            else:
                i, j = idx
                lhs = [-(j + 1), i + 1, j + 1]
                rhs = _vec_letters(self.conj(i, j))
            rels.append(tuple(lhs) + tuple(-a for a in reversed(rhs)))
        return FpPresentation.from_raw(self.names, rels)

    # consistency ------------------------------------------------------------
    def _word(self, *parts) -> tuple[Vec, Vec]:
        """Collect `parts` left to right, each a generator power (i, a) or an
        already collected element."""
        st = ((0,) * self.n, (0,) * self.tails)
        for p in parts:
            if isinstance(p[0], tuple):
                st = self.mul_full(st, p)
            else:
                st = self.collect_full([(p[0] + 1, p[1])], st)
        return st

    def consistency_tests(self):
        """The standard overlaps for a finite presentation; yields
        ``(label, lhs, rhs)`` with both sides collected by nested collection."""
        n, e = self.n, self.exponents
        pw = lambda i: (self.powers[i], self.power_tails[i])
        cj = lambda j, i: self._word((i, 1), (self.conj(j, i), self.conj_tail(j, i)))  # g_j g_i
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    lhs = self._word(cj(k, j), (i, 1))
                    rhs = self.mul_full(self._word((k, 1)), cj(j, i))
                    yield f"(g{k + 1} g{j + 1}) g{i + 1} = g{k + 1} (g{j + 1} g{i + 1})", lhs, rhs
        for i in range(n):
            for j in range(i + 1, n):
                lhs = self.mul_full(self._word((j, e[j] - 1)), cj(j, i))
                rhs = self._word(pw(j), (i, 1))
                yield f"g{j + 1}^{e[j] - 1} (g{j + 1} g{i + 1}) = (g{j + 1}^{e[j]}) g{i + 1}", lhs, rhs
                lhs = self._word((j, 1), pw(i))
                rhs = self._word(cj(j, i), (i, e[i] - 1))
                yield f"g{j + 1} (g{i + 1}^{e[i]}) = (g{j + 1} g{i + 1}) g{i + 1}^{e[i] - 1}", lhs, rhs
        for i in range(n):
            lhs = self._word(pw(i), (i, 1))
            rhs = self._word((i, 1), pw(i))
            yield f"(g{i + 1}^{e[i]}) g{i + 1} = g{i + 1} (g{i + 1}^{e[i]})", lhs, rhs

    def check_consistency(self) -> list[Relation]:
        """Relations induced by overlaps that fail to collapse.

        Pure tail relations are normalized (first nonzero entry positive)
        and deduplicated; the list is empty iff the presentation (with its
        tails taken as free central generators) is consistent.
        """
        out, seen = [], set()
        for label, lhs, rhs in self.consistency_tests():
            if lhs == rhs:
                continue
            if lhs[0] == rhs[0]:
                d = [a - b for a, b in zip(lhs[1], rhs[1])]
                lead = next(x for x in d if x)
                if lead < 0:
                    d = [-x for x in d]
                key: tuple = ("tail", tuple(d))
                rel = Relation(label, lhs, rhs, tuple(d))
            else:
                key = ("base", label)
                rel = Relation(label, lhs, rhs, None)
            if key not in seen:
                seen.add(key)
                out.append(rel)
        return out

    @property
    def consistent(self) -> bool:
        return not self.check_consistency()

    # enumeration and representations -----------------------------------------
    def elements(self) -> list[Vec]:
        out = [()]
        for e in self.exponents:
            out = [x + (a,) for x in out for a in range(e)]
        return out

    def index(self, v: Vec) -> int:
        k = 0
        for a, e in zip(v, self.exponents):
            k = k * e + a
        return k

    def central_block(self) -> int:
        """Smallest c such that g_c..g_n are central with trivial powers, so
        they span a direct factor-like block of cyclic groups (0-based)."""
        c = self.n
        while c > 0:
            j = c - 1
            ok = not any(self.powers[j]) and all(self.conj(j, i) == self.gen(j + 1) for i in range(j)) \
                and all(self.conj(k, j) == self.gen(k + 1) for k in range(j + 1, self.n))
            if not ok:
                break
            c -= 1
        return c

    def regular_representation(self) -> PermGroup:
        """Right regular action on normal words; needs no tails.

        Only the head (generators before the central block) is collected;
        the central coordinates are added on afterwards, vectorized.
        """
        if self.tails:
            raise PcError("regular representation needs finite tails; build the extension first")
        if not self.n:
            return PermGroup([np.zeros(1, dtype=np.int64)], ("e",))
        c = self.central_block()
        heads = [()]
        for e in self.exponents[:c]:
            heads = [x + (a,) for x in heads for a in range(e)]
        tail_e = np.array(self.exponents[c:], dtype=np.int64)
        T = int(np.prod(tail_e)) if len(tail_e) else 1
        tails = np.array(np.meshgrid(*[np.arange(e) for e in tail_e], indexing="ij")).reshape(len(tail_e), -1).T \
            if len(tail_e) else np.zeros((1, 0), dtype=np.int64)
        radix = np.cumprod(np.concatenate([[1], tail_e[:0:-1]]))[::-1] if len(tail_e) else np.zeros(0, np.int64)
        zero_tail = (0,) * (self.n - c)
        perms = []
        for i in range(self.n):
            g = self.gen(i + 1)
            perm = np.empty(len(heads) * T, dtype=np.int64)
            for hi, h in enumerate(heads):
                y = self.mul(h + zero_tail, g)
                base = self.index(y[:c] + zero_tail)
                shifted = (tails + np.array(y[c:], dtype=np.int64)) % tail_e if len(tail_e) else tails
                perm[hi * T:(hi + 1) * T] = base + shifted @ radix if len(tail_e) else base
            perms.append(perm)
        return PermGroup(perms, self.names)

    def element_perm(self, rep: PermGroup, v: Vec) -> np.ndarray:
        """The permutation of `v` in `rep` (a regular representation)."""
        return rep.evaluate(_vec_letters(v))

    # text format ---------------------------------------------------------------
    def format_vec(self, v: Sequence[int]) -> str:
        return " ".join(f"{self.names[k]}^{a}" for k, a in enumerate(v) if a)

    def dumps(self) -> str:
        if self.tails:
            raise PcError("free tails have no text form")
        lines = [f"pcgens: {self.n}"]
        for i in range(self.n):
            lines.append(f"pow {i + 1}: {self.exponents[i]} -> {self.format_vec(self.powers[i])}".rstrip())
        for (j, i) in sorted(self.conjugates, key=lambda k: (k[1], k[0])):
            c = self.conjugates[(j, i)]
            if c != self.gen(j + 1):
                lines.append(f"conj {j + 1} {i + 1}: {self.format_vec(c)}".rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "PcPresentation":
        n = None
        exps, pows, conjs, conjinv = {}, {}, {}, {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            m = re.fullmatch(r"pcgens:\s*(\d+)", line)
            if m:
                n = int(m.group(1))
                continue
            if n is None:
                raise PcError("first line must be 'pcgens: n'")
            m = re.fullmatch(r"pow\s+(\d+)\s*:\s*(\d+)\s*->\s*(.*)", line)
            if m:
                i = int(m.group(1)) - 1
                exps[i] = int(m.group(2))
                pows[i] = _parse_vec(m.group(3), n)
                continue
            m = re.fullmatch(r"(conj|conjinv)\s+(\d+)\s+(\d+)\s*:\s*(.*)", line)
            if m:
                j, i = int(m.group(2)) - 1, int(m.group(3)) - 1
                (conjs if m.group(1) == "conj" else conjinv)[(j, i)] = _parse_vec(m.group(4), n)
                continue
            raise PcError(f"cannot parse line: {raw!r}")
        if n is None:
            raise PcError("empty pc presentation")
        missing = [i + 1 for i in range(n) if i not in exps]
        if missing:
            raise PcError(f"no power relation for generator(s) {missing}: infinite pc groups are not supported")
        p = cls([exps[i] for i in range(n)], pows, conjs)
        for (j, i), w in conjinv.items():
            # g_j^(g_i^-1) is determined by the other relations; check agreement
            gi = p.gen(i + 1)
            got = p.mul(p.mul(gi, p.gen(j + 1)), p.inv(gi))
            if got != tuple(w):
                raise PcError(f"conjinv {j + 1} {i + 1} disagrees with the other relations")
        return p


def _vec_letters(v: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for k, a in enumerate(v):
        out.extend([k + 1] * a)
    return tuple(out)


def _parse_vec(text: str, n: int) -> list[int]:
    v = [0] * n
    last = -1
    for tok in text.split():
        m = re.fullmatch(r"g(\d+)(?:\^(\d+))?", tok)
        if not m:
            raise PcError(f"bad normal-word token {tok!r}")
        k = int(m.group(1)) - 1
        if not 0 <= k < n or k <= last:
            raise PcError(f"normal words list generators in increasing order: {text!r}")
        v[k] = int(m.group(2) or 1)
        last = k
    return v


# standard presentations ---------------------------------------------------------
def cyclic_pc(n: int) -> PcPresentation:
    """C_n on one generator of relative order n."""
    return PcPresentation([n], names=("g1",))


def metacyclic_pc(m: int, s: int, t: int, r: int) -> PcPresentation:
    """``<y, x | y^s = x^t, x^m = 1, x^y = x^r>`` with g1 = y, g2 = x."""
    return PcPresentation([s, m], powers={0: (0, t % m)}, conjugates={(1, 0): (0, r % m)})


def dihedral_pc(n: int) -> PcPresentation:
    """D_n of order 2n: g1^2 = 1, g2^n = 1, g2^g1 = g2^(n-1)."""
    return metacyclic_pc(n, 2, 0, n - 1)


def abelian_pc(orders: Sequence[int]) -> PcPresentation:
    return PcPresentation(list(orders))
