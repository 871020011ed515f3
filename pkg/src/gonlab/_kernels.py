"""Compiled inner loops: Dhar burning, off-sink reduction, class enumeration.

Graphs arrive as CSR triples ``(indptr, nbr, mult)``.  The sink is always
vertex 0 for the enumeration kernels; callers relabel if needed.  All
scratch buffers are allocated per call so the functions are safe to run in
separate worker processes.
"""

import numpy as np
from numba import njit

KERNEL_VERSION = "1"

# scan_block status codes
DONE = 0
FOUND = 1
PAUSED = 2


@njit(cache=True)
def dhar(indptr, nbr, mult, D, q, burnt, hits, stack):
    """Burn from ``q``; return the number of unburnt vertices.

    On return ``hits[u]`` for an unburnt ``u`` equals the number of edges from
    ``u`` to the burnt set, i.e. its outdegree when the unburnt set fires.
    """
    n = D.shape[0]
    for i in range(n):
        burnt[i] = False
        hits[i] = 0
    burnt[q] = True
    stack[0] = q
    top = 1
    nburnt = 1
    while top > 0:
        top -= 1
        u = stack[top]
        for e in range(indptr[u], indptr[u + 1]):
            w = nbr[e]
            if not burnt[w]:
                hits[w] += mult[e]
                if hits[w] > D[w]:
                    burnt[w] = True
                    stack[top] = w
                    top += 1
                    nburnt += 1
    return n - nburnt


@njit(cache=True)
def _fire_unburnt(indptr, nbr, mult, D, burnt, hits):
    # Fire the unburnt set as many times as stays legal (at least once).
    n = D.shape[0]
    k = -1
    for u in range(n):
        if not burnt[u] and hits[u] > 0:
            t = D[u] // hits[u]
            if k < 0 or t < k:
                k = t
    for u in range(n):
        if not burnt[u]:
            D[u] -= k * hits[u]
            for e in range(indptr[u], indptr[u + 1]):
                w = nbr[e]
                if burnt[w]:
                    D[w] += k * mult[e]
    return k


@njit(cache=True)
def bfs_layers(indptr, nbr, q, n):
    dist = np.full(n, -1, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    dist[q] = 0
    order[0] = q
    head = 0
    tail = 1
    while head < tail:
        u = order[head]
        head += 1
        for e in range(indptr[u], indptr[u + 1]):
            w = nbr[e]
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                order[tail] = w
                tail += 1
    return dist


@njit(cache=True)
def reduce_offsink(indptr, nbr, mult, D, q, dist):
    """Replace ``D`` in place by its ``q``-reduced representative.

    ``dist`` holds BFS distances from ``q``.  The entry ``D[q]`` is updated
    too, so degree is preserved.
    """
    n = D.shape[0]
    maxd = 0
    for v in range(n):
        if dist[v] > maxd:
            maxd = dist[v]
    # Clear debt layer by layer, farthest first, by borrowing for the set
    # of vertices at distance >= t; only layer t-1 loses chips.
    for t in range(maxd, 0, -1):
        k = 0
        for v in range(n):
            if dist[v] == t and D[v] < 0:
                inflow = 0
                for e in range(indptr[v], indptr[v + 1]):
                    if dist[nbr[e]] == t - 1:
                        inflow += mult[e]
                need = (-D[v] + inflow - 1) // inflow
                if need > k:
                    k = need
        if k > 0:
            for v in range(n):
                if dist[v] == t:
                    for e in range(indptr[v], indptr[v + 1]):
                        w = nbr[e]
                        if dist[w] == t - 1:
                            D[v] += k * mult[e]
                            D[w] -= k * mult[e]
    burnt = np.empty(n, dtype=np.bool_)
    hits = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    while dhar(indptr, nbr, mult, D, q, burnt, hits, stack) > 0:
        _fire_unburnt(indptr, nbr, mult, D, burnt, hits)


@njit(cache=True)
def _reaches(indptr, nbr, mult, D, v, work, burnt, hits, stack):
    # Can an effective ``D`` be moved to put a chip on ``v``?  Runs the
    # v-reduction and stops as soon as ``v`` holds a chip.
    n = D.shape[0]
    for i in range(n):
        work[i] = D[i]
    while True:
        if dhar(indptr, nbr, mult, work, v, burnt, hits, stack) == 0:
            return False
        _fire_unburnt(indptr, nbr, mult, work, burnt, hits)
        if work[v] > 0:
            return True


@njit(cache=True)
def positive_rank(indptr, nbr, mult, D, order, work, burnt, hits, stack):
    """Rank >= 1 test for an effective divisor.

    ``order`` is the vertex probe order; a failing vertex is moved to the
    front so the next candidate tries it first.
    """
    n = D.shape[0]
    for idx in range(n):
        v = order[idx]
        if D[v] > 0:
            continue
        if not _reaches(indptr, nbr, mult, D, v, work, burnt, hits, stack):
            for j in range(idx, 0, -1):
                order[j] = order[j - 1]
            order[0] = v
            return False
    return True


@njit(cache=True)
def _fill(x, ub, cap, start, r):
    # Lexicographically smallest completion of positions start..n-1 summing
    # to r; returns False if infeasible.
    n = x.shape[0]
    if start >= n:
        return r == 0
    if r < 0 or r > cap[start]:
        return False
    for j in range(start, n - 1):
        lo = r - cap[j + 1]
        if lo < 0:
            lo = 0
        x[j] = lo
        r -= lo
    x[n - 1] = r
    return True


@njit(cache=True)
def _advance(x, ub, cap, start):
    n = x.shape[0]
    if start >= n - 1:
        return False
    s = x[n - 1]
    for j in range(n - 2, start - 1, -1):
        s += x[j]
        if x[j] < ub[j] and s - x[j] >= 1:
            x[j] += 1
            return _fill(x, ub, cap, j + 1, s - x[j])
    return False


@njit(cache=True)
def scan_block(indptr, nbr, mult, ub, x, fixed, d, resume, chunk, test_rank, order, counts):
    """Enumerate sink-reduced candidates of one block in lex order.

    Positions ``0..fixed-1`` of ``x`` hold the block prefix; the remaining
    positions range over ``0..ub[j]`` so that ``sum(x) == d``.  With
    ``resume`` the scan continues after the candidate currently in ``x``.
    ``counts`` accumulates ``[raw candidates, reduced classes]``.

    Returns a status code and leaves ``x`` at the last candidate examined.
    """
    n = x.shape[0]
    cap = np.zeros(n + 1, dtype=np.int64)
    for j in range(n - 1, -1, -1):
        cap[j] = cap[j + 1] + ub[j]
    pref = 0
    for j in range(fixed):
        pref += x[j]
    burnt = np.empty(n, dtype=np.bool_)
    hits = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    work = np.empty(n, dtype=np.int64)
    if resume:
        if not _advance(x, ub, cap, fixed):
            return DONE
    else:
        if not _fill(x, ub, cap, fixed, d - pref):
            return DONE
    seen = 0
    while True:
        counts[0] += 1
        seen += 1
        if dhar(indptr, nbr, mult, x, 0, burnt, hits, stack) == 0:
            counts[1] += 1
            if test_rank and positive_rank(indptr, nbr, mult, x, order, work, burnt, hits, stack):
                return FOUND
        if seen >= chunk:
            return PAUSED
        if not _advance(x, ub, cap, fixed):
            return DONE


@njit(cache=True)
def superstables(indptr, nbr, mult, val):
    """All sink-reduced configurations off vertex 0, in lex order.

    Row ``i`` is a full-length vector with entry 0 set to zero.
    """
    n = val.shape[0]
    ub = np.zeros(n, dtype=np.int64)
    for j in range(1, n):
        ub[j] = val[j] - 1
    x = np.zeros(n, dtype=np.int64)
    burnt = np.empty(n, dtype=np.bool_)
    hits = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    out = []
    while True:
        if dhar(indptr, nbr, mult, x, 0, burnt, hits, stack) == 0:
            out.append(x.copy())
        # plain odometer over positions 1..n-1, last position fastest
        j = n - 1
        while j >= 1 and x[j] == ub[j]:
            x[j] = 0
            j -= 1
        if j < 1:
            break
        x[j] += 1
    res = np.zeros((len(out), n), dtype=np.int64)
    for i in range(len(out)):
        res[i] = out[i]
    return res


@njit(cache=True)
def encode(rows, radix):
    # mixed-radix codes of rows over positions 1..n-1 (position 0 ignored)
    m, n = rows.shape
    codes = np.zeros(m, dtype=np.int64)
    for i in range(m):
        c = 0
        for j in range(1, n):
            c = c * radix[j] + rows[i, j]
        codes[i] = c
    return codes


@njit(cache=True)
def transitions(indptr, nbr, mult, configs, codes, radix, dist):
    """``T[i, v]``: index of the reduced form of ``configs[i] - e_v``."""
    m, n = configs.shape
    T = np.empty((m, n), dtype=np.int64)
    work = np.empty(n, dtype=np.int64)
    one = np.zeros((1, n), dtype=np.int64)
    for i in range(m):
        T[i, 0] = i
        for v in range(1, n):
            for j in range(n):
                work[j] = configs[i, j]
            work[v] -= 1
            reduce_offsink(indptr, nbr, mult, work, 0, dist)
            work[0] = 0
            for j in range(n):
                one[0, j] = work[j]
            T[i, v] = np.searchsorted(codes, encode(one, radix)[0])
    return T
