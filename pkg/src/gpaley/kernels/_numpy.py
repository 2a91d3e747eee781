"""Pure-numpy kernels. Reference behaviour for the numba versions."""

import numpy as np


def refine(M, cell, K):
    """Iterate the equitable refinement of an ordered partition to its fixed point.

    ``M`` is an ``n x n`` colour matrix with entries in ``[0, K)`` and ``cell``
    maps each vertex to its cell index (cells numbered in order). A vertex's
    signature is its current cell followed by the sorted multiset
    ``{cell[u] * K + M[v, u]}``; cells are split by signature and renumbered
    in lexicographic signature order until nothing splits.

    Returns the refined cell array and, for each cell, the sorted key row of
    one of its vertices (every vertex of a cell shares it at the fixed point).
    """
    n = M.shape[0]
    cell = np.asarray(cell, dtype=np.int64)
    ncell = int(cell.max()) + 1 if n else 0
    Mi = M.astype(np.int64, copy=False)
    while True:
        keys = cell[None, :] * K + Mi
        keys.sort(axis=1)
        sig = np.empty((n, n + 1), dtype=np.int64)
        sig[:, 0] = cell
        sig[:, 1:] = keys
        _, new = np.unique(sig, axis=0, return_inverse=True)
        new = new.reshape(-1).astype(np.int64)
        c = int(new.max()) + 1
        if c == ncell:
            _, first = np.unique(cell, return_index=True)
            return cell, keys[first]
        cell, ncell = new, c


def scheme_mismatch(C, table):
    """Recount intersection numbers for every ordered pair.

    Returns ``(x, y, i, j, found, expected)`` for the first pair (row-major)
    whose count disagrees with ``table``, or ``None``.
    """
    return with_row_sums(C, table, _touched_mismatch(C, table))


def with_row_sums(C, table, touched):
    """Combine a touched-entries-only result with the row-sum test.

    Counts for a pair always sum to q, so a table row with another sum must
    differ somewhere, possibly at an entry no z touches. Whichever failing
    pair comes first in row-major order is reported.
    """
    q = C.shape[0]
    bad_class = table.reshape(table.shape[0], -1).sum(axis=1) != q
    mask = bad_class[C]
    if not mask.any():
        return touched
    first = int(np.argmax(mask.ravel()))
    if touched is not None and touched[0] * q + touched[1] <= first:
        return touched
    x, y = divmod(first, q)
    counts = np.zeros(table.shape[1:], dtype=np.int64)
    np.add.at(counts, (C[x], C[:, y]), 1)
    i, j = (int(v) for v in np.argwhere(counts != table[C[x, y]])[0])
    return x, y, i, j, int(counts[i, j]), int(table[C[x, y], i, j])


def _touched_mismatch(C, table):
    q = C.shape[0]
    K2 = table.shape[0]
    flat = table.reshape(K2, K2 * K2)
    Ci = C.astype(np.int64)
    CT = np.ascontiguousarray(Ci.T)
    for x in range(q):
        code = Ci[x][None, :] * K2 + CT
        s = np.sort(code, axis=1)
        start = np.ones(s.shape, dtype=bool)
        start[:, 1:] = s[:, 1:] != s[:, :-1]
        idx = np.flatnonzero(start.ravel())
        lengths = np.diff(np.append(idx, q * q))
        vals = s.ravel()[idx]
        rows = idx // q
        expected = flat[Ci[x, rows], vals]
        bad = np.flatnonzero(lengths != expected)
        if bad.size:
            b = bad[0]
            y = int(rows[b])
            i, j = divmod(int(vals[b]), K2)
            return x, y, i, j, int(lengths[b]), int(expected[b])
    return None


def component_labels(adj):
    """Connected-component label per vertex; components numbered by least vertex."""
    n = adj.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    comp = 0
    for v in range(n):
        if labels[v] >= 0:
            continue
        seen = np.zeros(n, dtype=bool)
        seen[v] = True
        frontier = seen.copy()
        while frontier.any():
            reach = adj[frontier].any(axis=0) & ~seen
            seen |= reach
            frontier = reach
        labels[seen] = comp
        comp += 1
    return labels
