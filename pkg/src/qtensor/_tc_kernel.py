"""Compiled Todd-Coxeter kernels.

Cosets are numbered from 1; entry 0 means "undefined".  Column ``2*i`` is
generator ``i`` and column ``2*i + 1`` its inverse, so ``col ^ 1`` inverts.
The state vector `st` holds ``[n_defined, n_live, ded_top, ded_overflow,
felsch, total_defined, max_live]``.
"""

import numpy as np
from numba import njit

N, LIVE, DTOP, DOVER, FELSCH, TOTAL, MAXLIVE = range(7)

OK, OVERFLOW = 0, 1


@njit(cache=True)
def _rep(p, k):
    r = k
    while p[r] != r:
        r = p[r]
    while p[k] != r:
        nxt = p[k]
        p[k] = r
        k = nxt
    return r


@njit(cache=True)
def _merge(p, q, qlen, a, b, st):
    ra = _rep(p, a)
    rb = _rep(p, b)
    if ra != rb:
        if ra > rb:
            ra, rb = rb, ra
        p[rb] = ra
        q[qlen] = rb
        qlen += 1
        st[LIVE] -= 1
    return qlen


@njit(cache=True)
def _push(dc, dx, st, c, x):
    if st[FELSCH]:
        t = st[DTOP]
        if t < dc.shape[0]:
            dc[t] = c
            dx[t] = x
            st[DTOP] = t + 1
        else:
            st[DOVER] = 1


@njit(cache=True)
def _coincidence(table, p, q, a, b, st, dc, dx):
    ncols = table.shape[1]
    qlen = _merge(p, q, 0, a, b, st)
    i = 0
    while i < qlen:
        g = q[i]
        i += 1
        for x in range(ncols):
            d = table[g, x]
            if d != 0:
                xi = x ^ 1
                table[d, xi] = 0
                mu = _rep(p, g)
                nu = _rep(p, d)
                if table[mu, x] != 0:
                    qlen = _merge(p, q, qlen, nu, table[mu, x], st)
                elif table[nu, xi] != 0:
                    qlen = _merge(p, q, qlen, mu, table[nu, xi], st)
                else:
                    table[mu, x] = nu
                    table[nu, xi] = mu
                    _push(dc, dx, st, mu, x)


@njit(cache=True)
def _define(table, p, st, a, x, dc, dx):
    b = st[N] + 1
    st[N] = b
    p[b] = b
    for c in range(table.shape[1]):
        table[b, c] = 0
    table[a, x] = b
    table[b, x ^ 1] = a
    st[LIVE] += 1
    st[TOTAL] += 1
    if st[LIVE] > st[MAXLIVE]:
        st[MAXLIVE] = st[LIVE]
    _push(dc, dx, st, a, x)


@njit(cache=True)
def _scan_and_fill(table, p, q, st, alpha, w, lo, hi, dc, dx):
    f = alpha
    b = alpha
    i = lo
    j = hi - 1
    while True:
        while i <= j and table[f, w[i]] != 0:
            f = table[f, w[i]]
            i += 1
        if i > j:
            if f != b:
                _coincidence(table, p, q, f, b, st, dc, dx)
            return
        while j >= i and table[b, w[j] ^ 1] != 0:
            b = table[b, w[j] ^ 1]
            j -= 1
        if j < i:
            _coincidence(table, p, q, f, b, st, dc, dx)
            return
        if i == j:
            table[f, w[i]] = b
            table[b, w[i] ^ 1] = f
            _push(dc, dx, st, f, w[i])
            return
        _define(table, p, st, f, w[i], dc, dx)


@njit(cache=True)
def _scan(table, p, q, st, alpha, w, lo, hi, dc, dx):
    f = alpha
    i = lo
    j = hi - 1
    while i <= j and table[f, w[i]] != 0:
        f = table[f, w[i]]
        i += 1
    if i > j:
        if f != alpha:
            _coincidence(table, p, q, f, alpha, st, dc, dx)
        return
    b = alpha
    while j >= i and table[b, w[j] ^ 1] != 0:
        b = table[b, w[j] ^ 1]
        j -= 1
    if j < i:
        _coincidence(table, p, q, f, b, st, dc, dx)
    elif i == j:
        table[f, w[i]] = b
        table[b, w[i] ^ 1] = f
        _push(dc, dx, st, f, w[i])


@njit(cache=True)
def _compact(table, p, st):
    """Renumber live cosets 1..live in order; returns the old->new map."""
    n = st[N]
    newnum = np.zeros(n + 1, dtype=np.int32)
    k = 0
    for c in range(1, n + 1):
        if p[c] == c:
            k += 1
            newnum[c] = k
    ncols = table.shape[1]
    for c in range(1, n + 1):
        if p[c] == c:
            r = newnum[c]
            for x in range(ncols):
                v = table[c, x]
                table[r, x] = newnum[v] if v != 0 else 0
    for c in range(1, k + 1):
        p[c] = c
    st[N] = k
    return newnum


@njit(cache=True)
def _lookahead(table, p, q, st, rl, ro, dc, dx):
    nrel = ro.shape[0] - 1
    c = 1
    while c <= st[N]:
        if p[c] == c:
            for r in range(nrel):
                if p[c] != c:
                    break
                _scan(table, p, q, st, c, rl, ro[r], ro[r + 1], dc, dx)
        c += 1


@njit(cache=True)
def _grow(table, p, q, newcap):
    t2 = np.zeros((newcap, table.shape[1]), dtype=np.int32)
    t2[: table.shape[0]] = table
    p2 = np.zeros(newcap, dtype=np.int32)
    p2[: p.shape[0]] = p
    q2 = np.zeros(newcap, dtype=np.int32)
    return t2, p2, q2


@njit(cache=True)
def enumerate_cosets(rl, ro, sl, so, cl, co, first, firstids, ncols,
                     max_cosets, felsch, init_cap, ded_cap):
    """Run coset enumeration; returns ``(table, p, st, status)``.

    `rl`/`ro` are relator letters/offsets, `sl`/`so` subgroup words, and
    `cl`/`co` the cyclic conjugates used by Felsch deduction processing,
    indexed by first letter through `first`/`firstids`.
    """
    maxlen = ncols + 1
    for r in range(ro.shape[0] - 1):
        if ro[r + 1] - ro[r] + 1 > maxlen:
            maxlen = ro[r + 1] - ro[r] + 1
    for r in range(so.shape[0] - 1):
        if so[r + 1] - so[r] + 1 > maxlen:
            maxlen = so[r + 1] - so[r] + 1
    # scans may run past max_cosets by at most one relator's worth of cosets
    hardcap = max_cosets + maxlen + 2
    cap = min(init_cap, hardcap)
    table = np.zeros((cap, ncols), dtype=np.int32)
    p = np.zeros(cap, dtype=np.int32)
    q = np.zeros(cap, dtype=np.int32)
    st = np.zeros(7, dtype=np.int64)
    dc = np.zeros(ded_cap, dtype=np.int32)
    dx = np.zeros(ded_cap, dtype=np.int32)
    st[N] = 1
    st[LIVE] = 1
    st[TOTAL] = 1
    st[MAXLIVE] = 1
    st[FELSCH] = felsch
    p[1] = 1
    nrel = ro.shape[0] - 1

    for r in range(so.shape[0] - 1):
        if st[N] + maxlen >= cap:
            if cap < hardcap:
                table, p, q = _grow(table, p, q, min(2 * cap, hardcap))
                cap = table.shape[0]
            else:
                _lookahead(table, p, q, st, rl, ro, dc, dx)
                _compact(table, p, st)
                if st[N] + maxlen >= cap:
                    return table, p, st, OVERFLOW
        _scan_and_fill(table, p, q, st, _rep(p, 1), sl, so[r], so[r + 1], dc, dx)

    if not felsch:
        a = 1
        while a <= st[N]:
            redo = False
            if p[a] == a:
                for r in range(nrel + 1):
                    if p[a] != a:
                        break
                    if st[N] + maxlen >= cap:
                        if cap < hardcap:
                            table, p, q = _grow(table, p, q, min(2 * cap, hardcap))
                            cap = table.shape[0]
                        else:
                            _lookahead(table, p, q, st, rl, ro, dc, dx)
                            newnum = _compact(table, p, st)
                            if st[N] + maxlen >= cap:
                                return table, p, st, OVERFLOW
                            # resume at the first live coset at or after a
                            b = a
                            while b < newnum.shape[0] and newnum[b] == 0:
                                b += 1
                            a = newnum[b] if b < newnum.shape[0] else st[N] + 1
                            redo = True
                            break
                    if r < nrel:
                        _scan_and_fill(table, p, q, st, a, rl, ro[r], ro[r + 1], dc, dx)
                    else:
                        for x in range(ncols):
                            if p[a] != a:
                                break
                            if table[a, x] == 0:
                                _define(table, p, st, a, x, dc, dx)
            if not redo:
                a += 1
        return table, p, st, OK

    # Felsch: define the first undefined entry, then close all deductions
    a = 1
    while True:
        while st[DTOP] > 0 or st[DOVER]:
            while st[DTOP] > 0:
                t = st[DTOP] - 1
                st[DTOP] = t
                c = dc[t]
                x = dx[t]
                if p[c] != c:
                    continue
                for k in range(first[x], first[x + 1]):
                    cid = firstids[k]
                    if p[c] != c:
                        break
                    _scan(table, p, q, st, c, cl, co[cid], co[cid + 1], dc, dx)
                if p[c] != c:
                    continue
                d = table[c, x]
                if d != 0 and p[d] == d:
                    xi = x ^ 1
                    for k in range(first[xi], first[xi + 1]):
                        cid = firstids[k]
                        if p[d] != d:
                            break
                        _scan(table, p, q, st, d, cl, co[cid], co[cid + 1], dc, dx)
            if st[DOVER]:
                st[DOVER] = 0
                _lookahead(table, p, q, st, rl, ro, dc, dx)
        while a <= st[N] and p[a] != a:
            a += 1
        found = False
        while a <= st[N]:
            if p[a] == a:
                for x in range(ncols):
                    if table[a, x] == 0:
                        found = True
                        if st[N] + 2 >= cap:
                            if cap < hardcap:
                                table, p, q = _grow(table, p, q, min(2 * cap, hardcap))
                                cap = table.shape[0]
                            else:
                                _lookahead(table, p, q, st, rl, ro, dc, dx)
                                _compact(table, p, st)
                                st[DTOP] = 0
                                st[DOVER] = 1
                                a = 1
                                if st[N] + 2 >= cap:
                                    return table, p, st, OVERFLOW
                                break
                        _define(table, p, st, a, x, dc, dx)
                        break
                if found:
                    break
            a += 1
        if not found and st[DTOP] == 0 and not st[DOVER]:
            live = st[LIVE]
            _lookahead(table, p, q, st, rl, ro, dc, dx)
            if st[LIVE] == live and st[DTOP] == 0 and not st[DOVER]:
                return table, p, st, OK
            a = 1


@njit(cache=True)
def standardize(table, p, n):
    """Compact live cosets and renumber them in breadth-first order from 1.

    Returns a 0-based ``(live, ncols)`` table.
    """
    ncols = table.shape[1]
    newnum = np.zeros(n + 1, dtype=np.int32)
    order = np.zeros(n + 1, dtype=np.int32)
    root = _rep(p, 1)
    newnum[root] = 1
    order[1] = root
    k = 1
    head = 1
    while head <= k:
        c = order[head]
        head += 1
        for x in range(ncols):
            d = table[c, x]
            if d != 0 and newnum[d] == 0:
                k += 1
                newnum[d] = k
                order[k] = d
    out = np.full((k, ncols), -1, dtype=np.int32)
    for i in range(1, k + 1):
        c = order[i]
        for x in range(ncols):
            d = table[c, x]
            if d != 0:
                out[i - 1, x] = newnum[d] - 1
    return out


@njit(cache=True)
def verify_table(table, rl, ro, sl, so):
    """Index of the first failing check, or -1 if the table is a valid closed table.

    Checks: entries defined and mutually inverse, every relator scans to a
    loop at every coset, every subgroup word fixes coset 0.
    """
    n, ncols = table.shape
    for c in range(n):
        for x in range(ncols):
            d = table[c, x]
            if d < 0 or table[d, x ^ 1] != c:
                return 0
    for r in range(ro.shape[0] - 1):
        for c in range(n):
            f = c
            for i in range(ro[r], ro[r + 1]):
                f = table[f, rl[i]]
            if f != c:
                return 1 + r
    for r in range(so.shape[0] - 1):
        f = 0
        for i in range(so[r], so[r + 1]):
            f = table[f, sl[i]]
        if f != 0:
            return 1 + ro.shape[0] + r
    return -1


@njit(cache=True)
def trace_words(table, start, wl, wo):
    """Coset reached from `start` along each word."""
    out = np.empty(wo.shape[0] - 1, dtype=np.int64)
    for r in range(wo.shape[0] - 1):
        f = start
        for i in range(wo[r], wo[r + 1]):
            f = table[f, wl[i]]
        out[r] = f
    return out
