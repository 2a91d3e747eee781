"""Generalised Paley graphs GPaley(q, (q-1)/k) and their classification.

The classification of a parameter pair is computed from integer arithmetic
alone; the graph-level certificates (components, the Hamming coordinate map)
are separate functions so large parameter sweeps never build graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    InvalidParams,
    IsConnected,
    NotHamming,
    SingularBasis,
    SpanNotSubfield,
)
from .errors import NotPrime
from .finite_field import FieldSpec, build_field, divisors, is_prime
from .graph_core import (
    ISOMORPHISM_BOUND,
    Graph,
    cayley_graph,
    complete_graph,
    hamming_graph,
    induced_subgraph,
    is_isomorphic,
)

SCHEMA = "gpaley/1"

DISCONNECTED = "Disconnected"
HAMMING = "Hamming"
CONNECTED_NON_HAMMING = "ConnectedNonHamming"


def check_params(q: int, k: int) -> None:
    """Raise InvalidParams naming the first violated condition."""
    if k < 1 or (q - 1) % k:
        raise InvalidParams(f"k={k} does not divide q-1={q - 1}", "divisibility")
    if k < 2:
        raise InvalidParams("k must be at least 2", "k>=2")
    if q % 2 and ((q - 1) // k) % 2:
        raise InvalidParams(
            f"q={q} is odd but (q-1)/k={(q - 1) // k} is odd", "parity"
        )


@dataclass(frozen=True)
class GPaleyParams:
    field: FieldSpec
    k: int

    def __post_init__(self):
        check_params(self.field.q, self.k)

    @classmethod
    def create(cls, p: int, R: int, k: int) -> "GPaleyParams":
        # validate before paying for the field tables
        check_params(p**R, k)
        return cls(build_field(p, R), k)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def R(self) -> int:
        return self.field.R

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def valency(self) -> int:
        return (self.q - 1) // self.k

    def __repr__(self):
        return f"GPaleyParams(p={self.p}, R={self.R}, k={self.k})"


@dataclass(frozen=True)
class ParamPair:
    """(p, R, k) without any field tables.

    Everything in :func:`classify` is integer arithmetic, so sweeps over large
    q use this instead of :class:`GPaleyParams`.
    """

    p: int
    R: int
    k: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.R < 1:
            raise ValueError("R must be positive")
        check_params(self.q, self.k)

    @property
    def q(self) -> int:
        return self.p**self.R

    @property
    def valency(self) -> int:
        return (self.q - 1) // self.k


def proper_divisors(R: int) -> list[int]:
    return [a for a in divisors(R) if a < R]


def connecting_set(params: GPaleyParams) -> list[int]:
    """The subgroup <omega^k> of order (q-1)/k, as sorted element codes."""
    f = params.field
    return sorted(int(v) for v in f.exp_table[:: params.k])


def build(params: GPaleyParams) -> Graph:
    return cayley_graph(params.field, connecting_set(params))


def is_connected_by_criterion(params: GPaleyParams) -> bool:
    """Connectivity test: no proper divisor a of R has (q-1)/(p^a-1) | k."""
    p, q, k = params.p, params.q, params.k
    return all(k % ((q - 1) // (p**a - 1)) for a in proper_divisors(params.R))


def smallest_subfield_degree(params: GPaleyParams) -> int:
    """Least a | R such that the connection set lies in GF(p^a)."""
    p, v = params.p, params.valency
    return min(a for a in divisors(params.R) if (p**a - 1) % v == 0)


def span_field_degree(params: GPaleyParams) -> int:
    """Degree over F_p of the F_p-span of the connection set.

    The span is built by closure and checked to be a subfield; the result
    must agree with :func:`smallest_subfield_degree`.
    """
    f = params.field
    p, q = f.p, f.q
    span = np.zeros(q, dtype=bool)
    span[0] = True
    scalars = [f.code([lam]) for lam in range(1, p)]
    for s in connecting_set(params):
        if span[s]:
            continue
        current = np.flatnonzero(span)
        for lam in scalars:
            span[f.add_arrays(current, f.mul(lam, s))] = True
        if span.all():
            break
    size = int(span.sum())
    a = round(math.log(size, p))
    if p**a != size or params.R % a:
        raise SpanNotSubfield(f"span has {size} elements")
    logs = f.log_table[np.flatnonzero(span)[1:]]
    g = math.gcd(q - 1, *map(int, logs)) if len(logs) else q - 1
    # logs of a multiplicatively closed set are exactly the multiples of g
    if len(logs) != (q - 1) // g or (logs % g).any():
        raise SpanNotSubfield("span is not closed under multiplication")
    if a != smallest_subfield_degree(params):
        raise SpanNotSubfield(
            f"closure gives degree {a}, arithmetic gives {smallest_subfield_degree(params)}"
        )
    return a


def hamming_parameters(params: GPaleyParams) -> Optional[tuple[int, int]]:
    """(a, b) with GPaley isomorphic to H(p^a, b), or None.

    The valency identity alone is not enough: (3, 4, 10) satisfies it with
    a = 1 yet its connection set is GF(9)*, so connectivity is required too.
    """
    p, q, k, R = params.p, params.q, params.k, params.R
    if not is_connected_by_criterion(params):
        return None
    hits = [a for a in proper_divisors(R) if k * R * (p**a - 1) == a * (q - 1)]
    # the valency b(p^a - 1) = (R/a)(p^a - 1) is strictly increasing in a
    assert len(hits) <= 1, hits
    if not hits:
        return None
    return hits[0], R // hits[0]


@dataclass
class Classification:
    variant: str
    one_dim_affine_case: bool
    a: Optional[int] = None
    b: Optional[int] = None
    k_prime: Optional[int] = None
    component_count: Optional[int] = None

    def to_json(self, params: GPaleyParams) -> dict:
        return {
            "schema": SCHEMA,
            "p": params.p,
            "R": params.R,
            "q": params.q,
            "k": params.k,
            "valency": params.valency,
            "variant": self.variant,
            "a": self.a,
            "b": self.b,
            "k_prime": self.k_prime,
            "component_count": self.component_count,
            "one_dim_affine_case": self.one_dim_affine_case,
        }


def classify(params: GPaleyParams) -> Classification:
    p, q, k, R = params.p, params.q, params.k, params.R
    one_dim = (p - 1) % k == 0
    ham = hamming_parameters(params)
    if not is_connected_by_criterion(params):
        a = smallest_subfield_degree(params)
        k_prime = (p**a - 1) * k // (q - 1)
        assert k_prime * (q - 1) == (p**a - 1) * k and k_prime >= 1
        return Classification(
            DISCONNECTED, one_dim, a=a, k_prime=k_prime, component_count=p ** (R - a)
        )
    if ham is not None:
        return Classification(HAMMING, one_dim, a=ham[0], b=ham[1])
    return Classification(CONNECTED_NON_HAMMING, one_dim)


def subfield_graph(p: int, a: int, k_prime: int) -> Graph:
    """GPaley(p^a, (p^a-1)/k') built in its own field; K_{p^a} when k' = 1."""
    if k_prime == 1:
        return complete_graph(p**a)
    return build(GPaleyParams.create(p, a, k_prime))


@dataclass
class Decomposition:
    a: int
    k_prime: int
    component_count: int
    subfield: list[int]
    component: Graph
    components: list[list[int]]
    translations: list[int]


def decompose(params: GPaleyParams, graph: Graph | None = None) -> Decomposition:
    """Components of a disconnected GPaley graph and the component Gamma_0 on GF(p^a)."""
    from .graph_core import connected_components

    if is_connected_by_criterion(params):
        raise IsConnected(f"{params} is connected")
    f = params.field
    a = span_field_degree(params)
    k_prime = (params.p**a - 1) * params.k // (params.q - 1)
    count = params.p ** (params.R - a)
    sub = f.subfield_elements(a)
    g = build(params) if graph is None else graph
    comps = connected_components(g)
    assert len(comps) == count, (len(comps), count)
    assert comps[0] == sub
    # component of t is t + GF(p^a); record the translating element
    translations = [c[0] for c in comps]
    for t, comp in zip(translations, comps):
        assert sorted(int(v) for v in f.add_arrays(sub, t)) == comp
    gamma0 = induced_subgraph(g, sub)
    if len(sub) <= ISOMORPHISM_BOUND:
        model = subfield_graph(params.p, a, k_prime)
        assert is_isomorphic(gamma0, model) is not None
    return Decomposition(a, k_prime, count, sub, gamma0, comps, translations)


@dataclass
class HammingIsomorphism:
    a: int
    b: int
    subfield: list[int]
    coordinates: np.ndarray  # (q, b) element codes in GF(p^a)
    vertex_map: np.ndarray  # q -> vertex index of hamming_graph(p^a, b)

    def __call__(self, u: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.coordinates[u])


def _solve_mod_p(A: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray:
    """Solve A X = rhs over F_p for square A; raises SingularBasis."""
    n = A.shape[0]
    aug = np.concatenate([A % p, rhs % p], axis=1).astype(np.int64)
    for col in range(n):
        pivots = np.flatnonzero(aug[col:, col]) + col
        if not len(pivots):
            raise SingularBasis("coordinate basis is singular")
        r = pivots[0]
        aug[[col, r]] = aug[[r, col]]
        aug[col] = (aug[col] * pow(int(aug[col, col]), -1, p)) % p
        others = np.flatnonzero(aug[:, col])
        others = others[others != col]
        aug[others] = (aug[others] - aug[others, col][:, None] * aug[col]) % p
    return aug[:, n:]


def hamming_isomorphism(params: GPaleyParams, graph: Graph | None = None) -> HammingIsomorphism:
    """Coordinates of every element in the GF(p^a)-basis 1, w^k, ..., w^((b-1)k).

    The solve runs over F_p: each unknown coefficient in GF(p^a) is expanded
    in the F_p-basis 1, t, ..., t^(a-1) of the subfield, t a generator of its
    multiplicative group.
    """
    ham = hamming_parameters(params)
    if ham is None:
        raise NotHamming(f"{params} is not a Hamming graph")
    a, b = ham
    f = params.field
    p, q, k = f.p, f.q, params.k
    sub = f.subfield_elements(a)
    theta = f.omega_pow((q - 1) // (p**a - 1))
    sub_basis = [f.pow(theta, l) for l in range(a)]
    X = [f.omega_pow(j * k) for j in range(b)]
    columns = [f.mul(beta, x) for x in X for beta in sub_basis]
    A = f.digits(columns).T
    lam = _solve_mod_p(A, f.digits(np.arange(q)).T, p).T  # (q, b*a)
    beta_digits = f.digits(sub_basis)  # (a, R)
    coords = np.empty((q, b), dtype=np.int64)
    for j in range(b):
        coords[:, j] = f.encode(lam[:, j * a : (j + 1) * a] @ beta_digits)
    sub_arr = np.asarray(sub)
    pos = np.searchsorted(sub_arr, coords)
    if not np.array_equal(sub_arr[np.minimum(pos, len(sub) - 1)], coords):
        raise SingularBasis("coordinates left the subfield")
    alphabet = p**a
    vertex_map = pos @ (alphabet ** np.arange(b - 1, -1, -1))
    iso = HammingIsomorphism(a, b, sub, coords, vertex_map)
    _check_hamming_map(params, iso, graph)
    return iso


def _check_hamming_map(params, iso, graph):
    q = params.q
    if not np.array_equal(np.sort(iso.vertex_map), np.arange(q)):
        raise AssertionError("coordinate map is not a bijection")
    weight = (iso.coordinates != 0).sum(axis=1)
    S = connecting_set(params)
    if set(np.flatnonzero(weight == 1).tolist()) != set(S):
        raise AssertionError("image of the connection set is not the weight-one vectors")
    g = build(params) if graph is None else graph
    H = hamming_graph(params.p**iso.a, iso.b)
    vm = iso.vertex_map
    if not np.array_equal(H.adjacency[np.ix_(vm, vm)], g.adjacency):
        raise AssertionError("coordinate map does not carry edges onto Hamming edges")
