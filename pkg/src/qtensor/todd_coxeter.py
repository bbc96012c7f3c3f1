"""Todd-Coxeter coset enumeration.

The default strategy is HLT (scan every relator at every coset, defining
cosets as needed) with lookahead when the coset limit is hit; Felsch
(definitions only at the first gap, followed by deduction processing) is
available via ``strategy="felsch"``.  Either way the finished table is
standardized (cosets renumbered breadth-first from the subgroup coset)
and re-verified by scanning every relator at every coset.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _tc_kernel as K
from .perm import PermGroup
from .words import FpPresentation, Word, canonical_relator, cyclic_reduce, free_reduce, inverse

log = logging.getLogger(__name__)

DEFAULT_MAX_COSETS = 2 ** 22
STRATEGIES = ("hlt", "felsch")


class CosetLimitExceeded(RuntimeError):
    pass


def _col(a: int) -> int:
    return 2 * (abs(a) - 1) + (a < 0)


def encode(words: Sequence[Word]) -> tuple[np.ndarray, np.ndarray]:
    offsets = np.zeros(len(words) + 1, dtype=np.int64)
    letters = []
    for i, w in enumerate(words):
        letters.extend(_col(a) for a in w)
        offsets[i + 1] = len(letters)
    return np.asarray(letters, dtype=np.int32), offsets


def _conjugates(relators: Sequence[Word], ncols: int):
    """All cyclic conjugates of relators and inverses, grouped by first column."""
    by_first: list[list[Word]] = [[] for _ in range(ncols)]
    seen = set()
    for r in relators:
        for w in (r, inverse(r)):
            for i in range(len(w)):
                c = w[i:] + w[:i]
                if c not in seen:
                    seen.add(c)
                    by_first[_col(c[0])].append(c)
    flat = [c for group in by_first for c in group]
    cl, co = encode(flat)
    first = np.zeros(ncols + 1, dtype=np.int64)
    for x in range(ncols):
        first[x + 1] = first[x] + len(by_first[x])
    return cl, co, first, np.arange(len(flat), dtype=np.int64)


@dataclass(frozen=True, eq=False)
class CosetTable:
    """A completed (or abandoned) coset table.

    `table[c, 2*i]` is the coset reached from `c` by generator ``i+1`` and
    `table[c, 2*i+1]` by its inverse; cosets are 0-based here, 0 being the
    subgroup itself.
    """

    presentation: FpPresentation
    subgroup: tuple[Word, ...]
    table: np.ndarray | None
    status: str
    strategy: str
    total_defined: int
    max_live: int

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    @property
    def num_cosets(self) -> int:
        if not self.complete:
            raise CosetLimitExceeded("enumeration exceeded its coset limit")
        return self.table.shape[0]

    def __len__(self):
        return self.num_cosets

    def action(self, gen: int) -> np.ndarray:
        """Permutation of cosets induced by generator `gen` (1-based)."""
        return self.table[:, 2 * (gen - 1)].copy()

    def trace(self, word: Sequence[int], start: int = 0) -> int:
        c = start
        for a in word:
            c = int(self.table[c, _col(a)])
        return c

    def verify(self) -> bool:
        rl, ro = encode(self.presentation.relators)
        sl, so = encode(self.subgroup)
        return K.verify_table(self.table, rl, ro, sl, so) == -1

    def dumps(self) -> str:
        """One line per coset (1-based): images under each generator."""
        names = self.presentation.generators
        head = "# coset " + " ".join(names)
        rows = [head]
        for c in range(self.num_cosets):
            imgs = " ".join(str(int(self.table[c, 2 * i]) + 1) for i in range(len(names)))
            rows.append(f"{c + 1}: {imgs}")
        return "\n".join(rows) + "\n"


def enumerate_cosets(presentation: FpPresentation, subgroup: Sequence[Sequence[int]] = (),
                     max_cosets: int = DEFAULT_MAX_COSETS, strategy: str = "hlt") -> CosetTable:
    """Enumerate the cosets of the subgroup generated by `subgroup`.

    Returns a table with status ``"exceeded-limit"`` (and no table) when
    more than `max_cosets` cosets would be needed.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    n = presentation.ngens
    sub = tuple(free_reduce(w, n) for w in subgroup)
    # relators equal up to rotation or inversion give identical scans
    seen, rels = set(), []
    for r in presentation.relators:
        r = cyclic_reduce(r)
        c = canonical_relator(r) if r else ()
        if c and c not in seen:
            seen.add(c)
            rels.append(r)
    ncols = 2 * n
    if ncols == 0:
        return CosetTable(presentation, sub, np.zeros((1, 0), dtype=np.int32), "complete",
                          strategy, 1, 1)
    rl, ro = encode(rels)
    sl, so = encode([w for w in sub if w])
    if strategy == "felsch":
        cl, co, first, ids = _conjugates(rels, ncols)
    else:
        cl, co = np.zeros(0, np.int32), np.zeros(1, np.int64)
        first, ids = np.zeros(ncols + 1, np.int64), np.zeros(0, np.int64)
    init_cap = int(min(max_cosets + 2, 4096))
    table, p, st, status = K.enumerate_cosets(rl, ro, sl, so, cl, co, first, ids, ncols,
                                              int(max_cosets), strategy == "felsch",
                                              init_cap, 1 << 16)
    total, maxlive = int(st[K.TOTAL]), int(st[K.MAXLIVE])
    if status != K.OK or int(st[K.LIVE]) > max_cosets:
        log.info("coset enumeration overflow: %d defined", total)
        return CosetTable(presentation, sub, None, "exceeded-limit", strategy, total, maxlive)
    out = K.standardize(table, p, int(st[K.N]))
    if out.shape[0] != int(st[K.LIVE]) or (out < 0).any():
        raise AssertionError("coset table not closed after enumeration")
    if K.verify_table(out, rl, ro, sl, so) != -1:
        raise AssertionError("coset table failed relator verification")
    out.setflags(write=False)
    log.debug("enumerated %d cosets (%d defined, %d max live, %s)",
              out.shape[0], total, maxlive, strategy)
    return CosetTable(presentation, sub, out, "complete", strategy, total, maxlive)


def subgroup_index(presentation: FpPresentation, subgroup: Sequence[Sequence[int]],
                   max_cosets: int = DEFAULT_MAX_COSETS, strategy: str = "hlt") -> int:
    t = enumerate_cosets(presentation, subgroup, max_cosets, strategy)
    return t.num_cosets


def permutation_representation(t: CosetTable) -> PermGroup:
    """Action of the presented group on the cosets in `t`."""
    if not t.complete:
        raise CosetLimitExceeded("table is not complete")
    names = t.presentation.generators
    return PermGroup([t.action(i + 1) for i in range(len(names))], names)


def regular_representation(t: CosetTable) -> PermGroup:
    """Faithful regular representation; `t` must be over the trivial subgroup."""
    if any(t.subgroup):
        raise ValueError("regular representation needs the trivial subgroup")
    return permutation_representation(t)


def direct_sum(*groups: PermGroup) -> PermGroup:
    """Disjoint union of actions of one group given on the same generator names."""
    names = groups[0].names
    if any(g.names != names for g in groups):
        raise ValueError("generator names differ")
    offsets = np.cumsum([0] + [g.degree for g in groups])
    perms = []
    for i in range(len(names)):
        perms.append(np.concatenate([g.gens[i] + off for g, off in zip(groups, offsets)]))
    return PermGroup(perms, names)
