"""numba versions of the kernels in ``_numpy``; outputs must match exactly."""

import numpy as np
from numba import njit

from ._numpy import with_row_sums


@njit(cache=True)
def _row_less(sig, a, b):
    m = sig.shape[1]
    for t in range(m):
        if sig[a, t] != sig[b, t]:
            return sig[a, t] < sig[b, t]
    return False


@njit(cache=True)
def _row_equal(sig, a, b):
    m = sig.shape[1]
    for t in range(m):
        if sig[a, t] != sig[b, t]:
            return False
    return True


@njit(cache=True)
def _lex_order(sig):
    # bottom-up merge sort of row indices; stable
    n = sig.shape[0]
    order = np.arange(n)
    buf = np.empty(n, dtype=np.int64)
    width = 1
    while width < n:
        lo = 0
        while lo < n:
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if _row_less(sig, order[j], order[i]):
                    buf[k] = order[j]
                    j += 1
                else:
                    buf[k] = order[i]
                    i += 1
                k += 1
            while i < mid:
                buf[k] = order[i]
                i += 1
                k += 1
            while j < hi:
                buf[k] = order[j]
                j += 1
                k += 1
            lo = hi
        order, buf = buf, order
        width *= 2
    return order


@njit(cache=True)
def _refine(M, cell_in, K):
    n = M.shape[0]
    cell = cell_in.copy()
    ncell = 0
    for v in range(n):
        if cell[v] + 1 > ncell:
            ncell = cell[v] + 1
    sig = np.empty((n, n + 1), dtype=np.int64)
    new = np.empty(n, dtype=np.int64)
    while True:
        for v in range(n):
            sig[v, 0] = cell[v]
            for u in range(n):
                sig[v, u + 1] = cell[u] * K + M[v, u]
            sig[v, 1:] = np.sort(sig[v, 1:])
        order = _lex_order(sig)
        c = 0
        new[order[0]] = 0
        for t in range(1, n):
            if not _row_equal(sig, order[t - 1], order[t]):
                c += 1
            new[order[t]] = c
        c += 1
        if c == ncell:
            reps = np.empty((ncell, n), dtype=np.int64)
            done = np.zeros(ncell, dtype=np.bool_)
            for v in range(n):
                if not done[cell[v]]:
                    done[cell[v]] = True
                    reps[cell[v], :] = sig[v, 1:]
            return cell, reps
        cell[:] = new
        ncell = c


def refine(M, cell, K):
    cell = np.asarray(cell, dtype=np.int64)
    if M.shape[0] == 0:
        return cell, np.zeros((0, 0), dtype=np.int64)
    return _refine(M, cell, np.int64(K))


@njit(cache=True)
def _scheme_mismatch(C, table):
    q = C.shape[0]
    K2 = table.shape[0]
    local = np.zeros((K2, K2), dtype=np.int64)
    out = np.full(6, -1, dtype=np.int64)
    for x in range(q):
        for y in range(q):
            h = C[x, y]
            for z in range(q):
                local[C[x, z], C[z, y]] += 1
            for z in range(q):
                i = C[x, z]
                j = C[z, y]
                c = local[i, j]
                if c != 0:
                    if c != table[h, i, j]:
                        out[0] = x
                        out[1] = y
                        out[2] = i
                        out[3] = j
                        out[4] = c
                        out[5] = table[h, i, j]
                        return out
                    local[i, j] = 0
    return out


def scheme_mismatch(C, table):
    # only entries some z lands on are compared here; rows with the wrong
    # total are caught by the shared row-sum test
    C = np.ascontiguousarray(C, dtype=np.int64)
    table = np.ascontiguousarray(table, dtype=np.int64)
    out = _scheme_mismatch(C, table)
    touched = None if out[0] < 0 else tuple(int(v) for v in out)
    return with_row_sums(C, table, touched)


@njit(cache=True)
def _component_labels(adj):
    n = adj.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    comp = 0
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = comp
        head, tail = 0, 1
        queue[0] = s
        while head < tail:
            v = queue[head]
            head += 1
            for u in range(n):
                if adj[v, u] and labels[u] < 0:
                    labels[u] = comp
                    queue[tail] = u
                    tail += 1
        comp += 1
    return labels


def component_labels(adj):
    return _component_labels(np.ascontiguousarray(adj, dtype=np.bool_))
