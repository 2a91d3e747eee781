"""Individualisation-refinement search over ordered partitions.

Everything here works on a square integer colour matrix ``M``: a plain graph
is its 0/1 adjacency matrix, an edge-coloured complete graph (such as a
cyclotomic scheme) is its class matrix, and diagonal entries act as vertex
colours.

The search tree is the usual one: the root is the equitable refinement of
the unit partition, and a node's children individualise each vertex of its
first largest non-singleton cell. Nodes carry an isomorphism-invariant
fingerprint (the quotient rows produced by refinement) that must match the
first path at the same depth, which prunes subtrees that cannot contain an
image of the first leaf.

:func:`automorphism_search` walks the first path bottom-up. At each level it
determines the orbit of the path's next vertex under the pointwise
stabiliser of the earlier path vertices, searching one subtree per
still-unreached candidate. The generators found are therefore a strong
generating set relative to the path, and the group order is the product of
the orbit lengths.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import SearchTimeout


@dataclass
class SearchResult:
    generators: list[np.ndarray]
    base: list[int]
    orbit_sizes: list[int]
    nodes: int = 0
    elapsed: float = 0.0
    order: int = field(init=False)

    def __post_init__(self):
        self.order = math.prod(self.orbit_sizes)


class _Tree:
    def __init__(self, M, K, deadline=None):
        self.M = np.ascontiguousarray(M, dtype=np.int64)
        self.n = self.M.shape[0]
        self.K = K
        self.deadline = deadline
        self.nodes = 0

    def refine(self, cell):
        self.nodes += 1
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SearchTimeout("automorphism search exceeded its time budget")
        cell, reps = kernels.refine(self.M, cell, self.K)
        return cell, reps.tobytes()

    def root(self):
        return self.refine(np.zeros(self.n, dtype=np.int64))

    @staticmethod
    def individualise(cell, v):
        c = cell[v]
        new = cell + (cell > c)
        new[cell == c] = c + 1
        new[v] = c
        return new

    @staticmethod
    def target(cell):
        sizes = np.bincount(cell)
        if sizes.max() == 1:
            return None
        t = int(np.argmax(sizes))
        return np.flatnonzero(cell == t)

    def first_path(self):
        cell, inv = self.root()
        cells, invs, base = [cell], [inv], []
        while True:
            members = self.target(cell)
            if members is None:
                break
            v = int(members[0])
            base.append(v)
            cell, inv = self.refine(self.individualise(cell, v))
            cells.append(cell)
            invs.append(inv)
        return cells, invs, base


def _leaf_order(cell):
    order = np.empty(len(cell), dtype=np.int64)
    order[cell] = np.arange(len(cell))
    return order


def _orbit(point, gens):
    orbit = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = int(g[x])
            if y not in orbit:
                orbit.add(y)
                stack.append(y)
    return orbit


def _colour_count(*mats):
    return max(2, max((int(m.max()) + 1 if m.size else 1) for m in mats))


def _find_leaf(tree, cell, depth, invs, leaf_depth, accept):
    """Depth-first search below ``cell`` for a leaf accepted by ``accept``."""
    if depth == leaf_depth:
        return accept(cell)
    stack = [(cell, depth, iter(tree.target(cell)))]
    while stack:
        cell, depth, it = stack[-1]
        u = next(it, None)
        if u is None:
            stack.pop()
            continue
        child, inv = tree.refine(tree.individualise(cell, int(u)))
        if inv != invs[depth + 1]:
            continue
        if depth + 1 == leaf_depth:
            perm = accept(child)
            if perm is not None:
                return perm
            continue
        stack.append((child, depth + 1, iter(tree.target(child))))
    return None


def automorphism_search(M, timeout: float | None = None, hints=()) -> SearchResult:
    """Generators and order of the group of permutations preserving ``M``.

    ``hints`` may hold permutations already known to preserve ``M``; they are
    checked and used to skip candidates, never trusted blindly.
    """
    start = time.monotonic()
    M = np.ascontiguousarray(M, dtype=np.int64)
    n = M.shape[0]
    tree = _Tree(M, _colour_count(M), None if timeout is None else start + timeout)
    if n == 0:
        return SearchResult([], [], [], 0, 0.0)
    hints = [np.asarray(h, dtype=np.int64) for h in hints]
    for h in hints:
        if not preserves(M, h):
            raise ValueError("hint permutation does not preserve the matrix")
    cells, invs, base = tree.first_path()
    leaf_depth = len(base)
    first_leaf = _leaf_order(cells[-1])

    def accept(cell):
        perm = np.empty(n, dtype=np.int64)
        perm[first_leaf] = _leaf_order(cell)
        return perm if preserves(M, perm) else None

    gens: list[np.ndarray] = []
    orbit_sizes = []
    for i in reversed(range(leaf_depth)):
        prefix = base[:i]
        usable = gens + [h for h in hints if all(h[b] == b for b in prefix)]
        orbit = _orbit(base[i], usable)
        for w in tree.target(cells[i]):
            w = int(w)
            if w in orbit:
                continue
            child, inv = tree.refine(tree.individualise(cells[i], w))
            if inv != invs[i + 1]:
                continue
            perm = _find_leaf(tree, child, i + 1, invs, leaf_depth, accept)
            if perm is not None:
                gens.append(perm)
                usable.append(perm)
                orbit = _orbit(base[i], usable)
        orbit_sizes.append(len(orbit))
    orbit_sizes.reverse()
    return SearchResult(gens + hints, base, orbit_sizes, tree.nodes, time.monotonic() - start)


def find_isomorphism(M1, M2, timeout: float | None = None):
    """A permutation ``perm`` with ``M2[perm][:, perm] == M1``, or None."""
    M1 = np.ascontiguousarray(M1, dtype=np.int64)
    M2 = np.ascontiguousarray(M2, dtype=np.int64)
    if M1.shape != M2.shape:
        return None
    n = M1.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if not np.array_equal(np.sort(M1, axis=None), np.sort(M2, axis=None)):
        return None
    deadline = None if timeout is None else time.monotonic() + timeout
    K = _colour_count(M1, M2)
    t1 = _Tree(M1, K, deadline)
    t2 = _Tree(M2, K, deadline)
    cells, invs, base = t1.first_path()
    first_leaf = _leaf_order(cells[-1])

    def accept(cell):
        perm = np.empty(n, dtype=np.int64)
        perm[first_leaf] = _leaf_order(cell)
        return perm if np.array_equal(M2[np.ix_(perm, perm)], M1) else None

    root, inv = t2.root()
    if inv != invs[0]:
        return None
    return _find_leaf(t2, root, 0, invs, len(base), accept)


def preserves(M, perm) -> bool:
    perm = np.asarray(perm)
    return bool(np.array_equal(M[np.ix_(perm, perm)], M))
