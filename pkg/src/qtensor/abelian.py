"""Smith normal form over the integers and abelianization helpers.

Python integers are arbitrary precision, so entries never overflow; the
reduction is exact at every size.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

IntMatrix = list[list[int]]


def _identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_form(m: Sequence[Sequence[int]], rows: int | None = None, cols: int | None = None):
    """Return ``(diagonal, U, V)`` with ``U @ m @ V`` diagonal.

    `U` and `V` are unimodular; the diagonal has ``min(rows, cols)``
    non-negative entries forming a divisibility chain.
    """
    A = [list(map(int, r)) for r in m]
    r = len(A) if rows is None else rows
    if cols is None:
        cols = len(A[0]) if A else 0
    c = cols
    U = _identity(r)
    V = _identity(c)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        if k:
            ad, as_ = A[dst], A[src]
            for j in range(c):
                ad[j] += k * as_[j]
            ud, us = U[dst], U[src]
            for j in range(r):
                ud[j] += k * us[j]

    def add_col(dst, src, k):
        if k:
            for row in A:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]

    for t in range(min(r, c)):
        while True:
            # smallest non-zero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, r):
                Ai = A[i]
                for j in range(t, c):
                    v = Ai[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty |= A[i][t] != 0
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty |= A[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, r)
                        if any(A[i][j] % p for j in range(t + 1, c))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
    diag = [A[i][i] for i in range(min(r, c))]
    return diag, U, V


def smith_normal_form(m: Sequence[Sequence[int]], rows: int | None = None,
                      cols: int | None = None) -> tuple[int, ...]:
    return tuple(smith_form(m, rows, cols)[0])


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def abelian_invariants_of_relations(rows: Sequence[Sequence[int]], ncols: int) -> tuple[int, ...]:
    """Invariants of ``Z^ncols / <rows>``: non-unit diagonal entries, 0 for Z."""
    nrows = len(rows)
    diag = list(smith_normal_form(rows, nrows, ncols)) if nrows and ncols else []
    diag += [0] * (ncols - len(diag))
    return tuple(d for d in diag if d != 1)


def exponent_sums(word: Sequence[int], ngens: int) -> list[int]:
    v = [0] * ngens
    for a in word:
        v[abs(a) - 1] += 1 if a > 0 else -1
    return v


def relation_matrix(group) -> tuple[list[list[int]], int]:
    """Abelianized relators of anything exposing ``to_presentation()``."""
    pres = group if hasattr(group, "relators") and hasattr(group, "generators") \
        else group.to_presentation()
    n = pres.ngens
    return [exponent_sums(r, n) for r in pres.relators], n


def q_abelianization(group, q: int) -> tuple[int, ...]:
    """Invariants of ``G / G'G^q``."""
    rows, n = relation_matrix(group)
    if q:
        rows = rows + [[q * int(i == j) for j in range(n)] for i in range(n)]
    return abelian_invariants_of_relations(rows, n)


def is_q_perfect(group, q: int) -> bool:
    """True iff ``G = G'G^q``.

    `group` is a PermGroup (compared by subgroup orders) or anything with a
    presentation (trivial q-abelianization).
    """
    if q < 0:
        raise ValueError("q must be non-negative")
    from .perm import PermGroup
    if isinstance(group, PermGroup):
        return _perm_q_perfect(group, q)
    return not q_abelianization(group, q)


def _perm_q_perfect(group, q: int) -> bool:
    from . import analysis as an
    whole = an.whole(group)
    gens = group.generators()
    seeds = [group.comm(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    if q:
        seeds += [group.power(x, q) for x in whole.elements]
    seeds = [x for x in seeds if not group.is_identity(x)]
    return an.normal_closure(gens, seeds, group).order == whole.order
