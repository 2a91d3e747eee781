"""The symmetric cyclotomic association scheme Cyc(q, k).

Ordered pair ``(x, y)`` lies in class ``i`` (1 <= i <= k) when
``log(y - x) = i mod k``, with residue 0 sent to class k so that class k is
the generalised Paley graph itself; the diagonal is class 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BoundExceeded, NotAScheme, OutOfRange, SymmetryViolation
from .finite_field import FieldSpec
from .graph_core import Graph, connected_components
from .paley import SCHEMA, check_params

INTERSECTION_BOUND = 4096


@dataclass
class CyclotomicScheme:
    field: FieldSpec
    k: int
    element_class: np.ndarray  # class of each difference y - x
    classes: np.ndarray  # (q, q) class matrix

    @property
    def q(self) -> int:
        return self.field.q

    def relation_of(self, x: int, y: int) -> int:
        return int(self.classes[x, y])

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.classes.ravel(), minlength=self.k + 1)


def build_scheme(field: FieldSpec, k: int) -> CyclotomicScheme:
    check_params(field.q, k)
    q = field.q
    res = field.log_table % k
    element_class = np.where(res == 0, k, res).astype(np.int64)
    element_class[0] = 0
    if element_class[field.neg(field.one)] != k:
        raise SymmetryViolation("-1 is not in the connection set")
    dtype = np.int16 if k < 2**15 else np.int32
    classes = np.empty((q, q), dtype=dtype)
    verts = np.arange(q)
    for x in range(q):
        classes[x] = element_class[field.sub_arrays(verts, x)]
    if not np.array_equal(classes, classes.T):
        raise SymmetryViolation("class matrix is not symmetric")
    return CyclotomicScheme(field, k, element_class, classes)


def relation_graph(scheme: CyclotomicScheme, i: int) -> Graph:
    if not 1 <= i <= scheme.k:
        raise OutOfRange(f"relation index {i} outside 1..{scheme.k}")
    return Graph(scheme.classes == i, vertex_labels=list(range(scheme.q)))


def relation_graph_isomorphism(scheme: CyclotomicScheme, i: int, j: int) -> np.ndarray:
    """Multiplication by omega^(j-i), which carries relation graph i onto j."""
    k = scheme.k
    if not (1 <= i <= k and 1 <= j <= k):
        raise OutOfRange("relation index outside 1..k")
    f = scheme.field
    perm = f.mul_arrays(np.arange(f.q), f.omega_pow(j - i))
    C = scheme.classes
    if not np.array_equal(C[np.ix_(perm, perm)] == j, C == i):
        raise AssertionError(f"scalar map does not carry relation {i} onto {j}")
    return perm


@dataclass
class IntersectionTable:
    """``p[h, i, j]``: for (x, y) in class h, the number of z with (x, z) in
    class i and (z, y) in class j."""

    p: np.ndarray
    verified: bool = False

    @property
    def k(self) -> int:
        return self.p.shape[0] - 1

    def to_json(self, scheme: CyclotomicScheme | None = None) -> dict:
        out = {"schema": SCHEMA}
        if scheme is not None:
            f = scheme.field
            out.update(p=f.p, R=f.R, q=f.q, k=scheme.k)
        out["full_check"] = self.verified
        out["intersection_numbers"] = self.p.tolist()
        return out


def intersection_numbers(scheme: CyclotomicScheme, verify: bool = False) -> IntersectionTable:
    """Counts from one representative pair per class; ``verify`` recounts
    every ordered pair and raises NotAScheme on the first disagreement."""
    q, k = scheme.q, scheme.k
    if q > INTERSECTION_BOUND:
        raise BoundExceeded(f"q={q} exceeds intersection-number bound {INTERSECTION_BOUND}")
    C = scheme.classes.astype(np.int64)
    f = scheme.field
    table = np.zeros((k + 1, k + 1, k + 1), dtype=np.int64)
    for h in range(k + 1):
        y = 0 if h == 0 else f.omega_pow(h)
        assert C[0, y] == h
        np.add.at(table[h], (C[0], C[:, y]), 1)
    assert (table.sum(axis=(1, 2)) == q).all()
    if verify:
        bad = kernels.scheme_mismatch(C, table)
        if bad is not None:
            x, y, i, j, found, expected = bad
            raise NotAScheme(int(C[x, y]), i, j, (x, y), expected, found)
    return IntersectionTable(table, verified=verify)


def is_primitive(scheme: CyclotomicScheme) -> bool:
    """Primitive iff every relation graph is connected."""
    from .paley import GPaleyParams, is_connected_by_criterion

    result = all(
        len(connected_components(relation_graph(scheme, i))) == 1 for i in range(1, scheme.k + 1)
    )
    assert result == is_connected_by_criterion(GPaleyParams(scheme.field, scheme.k))
    return result


def scheme_automorphism_group(scheme: CyclotomicScheme, timeout: float | None = None):
    """Permutations of GF(q) preserving every class of the scheme."""
    from .autgroup import color_automorphism_group

    return color_automorphism_group(scheme.classes, timeout=timeout)


def scheme_automorphism_order(scheme: CyclotomicScheme, timeout: float | None = None) -> int:
    return scheme_automorphism_group(scheme, timeout).order()
