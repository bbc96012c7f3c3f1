"""Free-group words and finitely presented groups.

A word is a tuple of non-zero integers: ``+i`` is the generator with
1-based index ``i`` and ``-i`` its inverse.  All words handed out by this
module are freely reduced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Word = tuple[int, ...]


class MalformedWordError(ValueError):
    pass


def _letter(x) -> int:
    if isinstance(x, tuple):
        index, sign = x
        if sign not in (1, -1):
            raise MalformedWordError(f"letter sign must be +-1, got {sign}")
        return sign * index
    return int(x)


def free_reduce(letters: Iterable, ngens: int | None = None) -> Word:
    """Freely reduce a letter sequence.

    Letters may be signed integers or ``(index, sign)`` pairs.  If `ngens`
    is given, indices outside ``1..ngens`` raise `MalformedWordError`.
    """
    out: list[int] = []
    for raw in letters:
        a = _letter(raw)
        if a == 0 or (ngens is not None and abs(a) > ngens):
            raise MalformedWordError(f"unknown generator index {a}")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


def mul(*words: Sequence[int]) -> Word:
    return free_reduce(a for w in words for a in w)


def power(w: Sequence[int], n: int) -> Word:
    if n < 0:
        return power(inverse(w), -n)
    return free_reduce(tuple(w) * n)


def conj(w: Sequence[int], by: Sequence[int]) -> Word:
    """``by^-1 w by``."""
    return mul(inverse(by), w, by)


def comm(*ws: Sequence[int]) -> Word:
    """Left-normed commutator ``[a, b] = a^-1 b^-1 a b``."""
    out = tuple(ws[0])
    for b in ws[1:]:
        out = mul(inverse(out), inverse(b), out, b)
    return out


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def canonical_relator(w: Sequence[int]) -> Word:
    """Lexicographically least cyclic permutation of `w` or its inverse.

    Two relators with the same canonical form define the same normal
    closure, which is what duplicate removal relies on.
    """
    w = cyclic_reduce(w)
    if not w:
        return w
    best = None
    for cand in (w, inverse(w)):
        for i in range(len(cand)):
            rot = cand[i:] + cand[:i]
            if best is None or rot < best:
                best = rot
    return best


@dataclass(frozen=True)
class FpPresentation:
    """Generators and relators of a finitely presented group."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    gen_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError("generator names must be distinct")
        object.__setattr__(self, "generators", gens)
        n = len(gens)
        rels = []
        for r in self.relators:
            red = free_reduce(r, n)
            if red != tuple(r):
                raise MalformedWordError(f"relator {r} is not freely reduced")
            rels.append(red)
        object.__setattr__(self, "relators", tuple(rels))
        object.__setattr__(self, "gen_index", {g: i + 1 for i, g in enumerate(gens)})

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @classmethod
    def from_raw(cls, generators: Sequence[str], relators: Iterable[Iterable], dedupe=True):
        """Build from unreduced relators, dropping trivial and duplicate ones."""
        n = len(generators)
        seen = set()
        out = []
        for r in relators:
            w = free_reduce(r, n)
            if not w:
                continue
            if dedupe:
                key = canonical_relator(w)
                if not key or key in seen:
                    continue
                seen.add(key)
            out.append(w)
        return cls(tuple(generators), tuple(out))

    def word(self, text: str) -> Word:
        return parse_word(text, self.gen_index)

    def format_word(self, w: Sequence[int]) -> str:
        return format_word(w, self.generators)

    def dumps(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        lines += ["rel: " + format_word(r, self.generators) for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "FpPresentation":
        gens = None
        rels = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, body = line.partition(":")
            key = key.strip()
            if key == "gens":
                if gens is not None:
                    raise ValueError(f"line {lineno}: duplicate gens line")
                gens = tuple(body.split())
            elif key == "rel":
                if gens is None:
                    raise ValueError(f"line {lineno}: rel before gens")
                index = {g: i + 1 for i, g in enumerate(gens)}
                rels.append(free_reduce(parse_word(body, index)))
            else:
                raise ValueError(f"line {lineno}: unknown directive {key!r}")
        if gens is None:
            raise ValueError("missing gens line")
        return cls(gens, tuple(rels))


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def parse_word(text: str, gen_index: dict) -> Word:
    """Parse space-separated ``name^exp`` tokens; ``1`` or empty is the identity."""
    letters: list[int] = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise MalformedWordError(f"bad token {tok!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if name not in gen_index:
            raise MalformedWordError(f"unknown generator {name!r}")
        a = gen_index[name]
        letters.extend([a if exp > 0 else -a] * abs(exp))
    return free_reduce(letters)


def format_word(w: Sequence[int], names: Sequence[str]) -> str:
    if not w:
        return "1"
    toks = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        e = (j - i) * (1 if w[i] > 0 else -1)
        name = names[abs(w[i]) - 1]
        toks.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(toks)
