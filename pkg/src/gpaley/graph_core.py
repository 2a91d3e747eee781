"""Undirected simple graphs on ``0..n-1`` stored as dense boolean matrices."""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from . import _config, kernels
from .errors import (
    BoundExceeded,
    NotSymmetricConnectionSet,
    OutOfRange,
    ZeroInConnectionSet,
)
from .finite_field import FieldSpec

ISOMORPHISM_BOUND = 256


class Graph:
    """Immutable simple graph.

    ``vertex_labels`` optionally records what each vertex stands for (field
    element codes for Cayley graphs, tuples for Hamming graphs).
    """

    def __init__(self, adjacency, vertex_labels: Sequence | None = None):
        adj = np.array(adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        if adj.diagonal().any():
            raise ValueError("adjacency must have a zero diagonal")
        if vertex_labels is not None:
            vertex_labels = list(vertex_labels)
            if len(vertex_labels) != adj.shape[0]:
                raise ValueError("label count differs from vertex count")
            if len(set(vertex_labels)) != len(vertex_labels):
                raise ValueError("vertex labels must be distinct")
        adj.flags.writeable = False
        self.adjacency = adj
        self.vertex_labels = vertex_labels

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def is_regular(self, valency: int | None = None) -> bool:
        d = self.degrees()
        if self.n == 0:
            return True
        return bool((d == d[0]).all() and (valency is None or d[0] == valency))

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(i.tolist(), j.tolist()))

    def neighbours(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    def relabel(self, perm) -> "Graph":
        """The image graph under the vertex map ``v -> perm[v]``."""
        perm = np.asarray(perm)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        return Graph(self.adjacency[np.ix_(inv, inv)])

    def is_automorphism(self, perm) -> bool:
        perm = np.asarray(perm)
        return bool(np.array_equal(self.adjacency[np.ix_(perm, perm)], self.adjacency))

    def __eq__(self, other):
        return isinstance(other, Graph) and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash(self.adjacency.tobytes())

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"


def complete_graph(n: int) -> Graph:
    return Graph(~np.eye(n, dtype=bool))


def cycle_graph(n: int) -> Graph:
    adj = np.zeros((n, n), dtype=bool)
    idx = np.arange(n)
    adj[idx, (idx + 1) % n] = True
    adj[(idx + 1) % n, idx] = True
    return Graph(adj)


def cayley_graph(field: FieldSpec, S: Iterable[int]) -> Graph:
    """Cayley graph of the additive group of ``field``: x ~ y iff x - y in S."""
    S = sorted({int(s) for s in S})
    if 0 in S:
        raise ZeroInConnectionSet("0 lies in the connection set")
    neg = {int(v) for v in field.neg_arrays(S)} if S else set()
    if neg != set(S):
        raise NotSymmetricConnectionSet("connection set is not closed under negation")
    q = field.q
    verts = np.arange(q)
    adj = np.zeros((q, q), dtype=bool)
    for s in S:
        adj[verts, field.add_arrays(verts, s)] = True
    return Graph(adj, vertex_labels=list(range(q)))


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex sets of the components, each sorted, ordered by least vertex."""
    labels = kernels.component_labels(g.adjacency)
    parts: dict[int, list[int]] = {}
    for v, c in enumerate(labels.tolist()):
        parts.setdefault(c, []).append(v)
    return [parts[c] for c in sorted(parts)]


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    vs = sorted({int(v) for v in vertices})
    if any(v < 0 or v >= g.n for v in vs):
        raise OutOfRange("vertex outside the graph")
    labels = None
    if g.vertex_labels is not None:
        labels = [g.vertex_labels[v] for v in vs]
    return Graph(g.adjacency[np.ix_(vs, vs)], vertex_labels=labels)


def is_isomorphic(g: Graph, h: Graph, timeout: float | None = None):
    """An explicit isomorphism ``g -> h`` as an image array, or None.

    Uses the same refinement search as the automorphism code: the first leaf
    of ``g``'s search tree is matched against leaves of ``h``'s tree.
    """
    from .search import find_isomorphism

    if max(g.n, h.n) > ISOMORPHISM_BOUND:
        raise BoundExceeded(f"isomorphism oracle limited to {ISOMORPHISM_BOUND} vertices")
    if g.n != h.n or g.edge_count != h.edge_count:
        return None
    if not np.array_equal(np.sort(g.degrees()), np.sort(h.degrees())):
        return None
    perm = find_isomorphism(g.adjacency.astype(np.int64), h.adjacency.astype(np.int64), timeout)
    if perm is None:
        return None
    # the witness is re-checked independently of the search
    assert np.array_equal(h.adjacency[np.ix_(perm, perm)], g.adjacency)
    return perm


def hamming_graph(a: int, b: int) -> Graph:
    """H(a, b): b-tuples over range(a) in lexicographic order, adjacent iff
    they differ in exactly one coordinate."""
    if a < 2 or b < 2:
        raise ValueError("Hamming graph needs a >= 2 and b >= 2")
    if a**b > _config.max_q():
        raise BoundExceeded(f"{a}^{b} vertices exceeds bound")
    tuples = np.array(list(itertools.product(range(a), repeat=b)), dtype=np.int64)
    diff = (tuples[:, None, :] != tuples[None, :, :]).sum(axis=2)
    return Graph(diff == 1, vertex_labels=[tuple(t) for t in tuples.tolist()])
