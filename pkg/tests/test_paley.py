import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpaley.errors import InvalidParams, IsConnected, NotHamming, NotPrime
from gpaley.finite_field import build_field
from gpaley.graph_core import complete_graph, cycle_graph, is_connected, is_isomorphic
from gpaley.paley import (
    CONNECTED_NON_HAMMING,
    DISCONNECTED,
    HAMMING,
    GPaleyParams,
    ParamPair,
    build,
    check_params,
    classify,
    connecting_set,
    decompose,
    hamming_isomorphism,
    hamming_parameters,
    is_connected_by_criterion,
    span_field_degree,
)
from oracles import valid_pairs

PAIRS_200 = list(valid_pairs(200))


def P(p, R, k):
    return GPaleyParams.create(p, R, k)


def test_check_params_conditions():
    with pytest.raises(InvalidParams) as e:
        check_params(9, 3)
    assert e.value.condition == "divisibility"
    with pytest.raises(InvalidParams) as e:
        check_params(9, 1)
    assert e.value.condition == "k>=2"
    with pytest.raises(InvalidParams) as e:
        check_params(9, 8)
    assert e.value.condition == "parity"
    check_params(16, 15)  # even q: no parity condition
    with pytest.raises(NotPrime):
        ParamPair(6, 1, 5)


def test_connecting_set_examples():
    assert connecting_set(P(5, 1, 2)) == [1, 4]
    f9 = build_field(3, 2)
    assert connecting_set(P(3, 2, 4)) == sorted([f9.one, f9.neg(f9.one)])
    assert len(connecting_set(P(3, 4, 4))) == 20


def test_build_examples():
    assert sorted(build(P(5, 1, 2)).edges()) == sorted(cycle_graph(5).edges())
    assert build(P(3, 2, 2)).is_regular(4)
    g = build(P(2, 4, 5))
    assert g.n == 16 and g.is_regular(3)


def test_criterion_examples():
    assert is_connected_by_criterion(P(13, 1, 3))
    assert not is_connected_by_criterion(P(2, 4, 5))
    assert is_connected_by_criterion(P(3, 4, 4))


@pytest.mark.parametrize("p,R,k", PAIRS_200)
def test_criterion_matches_bfs(p, R, k):
    params = P(p, R, k)
    assert is_connected_by_criterion(params) == is_connected(build(params))
    if R == 1:
        assert classify(params).variant != DISCONNECTED


def test_span_field_degree_examples():
    assert span_field_degree(P(3, 4, 4)) == 4
    assert span_field_degree(P(2, 4, 5)) == 2
    assert span_field_degree(P(3, 4, 40)) == 1


@pytest.mark.parametrize(
    "p,R,k,a,kp,count,model",
    [
        (2, 4, 5, 2, 1, 4, complete_graph(4)),
        (3, 4, 40, 1, 1, 27, complete_graph(3)),
        (5, 2, 12, 1, 2, 5, cycle_graph(5)),
    ],
)
def test_decompose_examples(p, R, k, a, kp, count, model):
    d = decompose(P(p, R, k))
    assert (d.a, d.k_prime, d.component_count) == (a, kp, count)
    assert len(d.components) == count
    assert all(len(c) == p**a for c in d.components)
    assert is_isomorphic(d.component, model) is not None
    assert nx.is_isomorphic(
        nx.from_numpy_array(d.component.adjacency.astype(int)),
        nx.from_numpy_array(model.adjacency.astype(int)),
    )


def test_decompose_rejects_connected():
    with pytest.raises(IsConnected):
        decompose(P(3, 4, 4))


def test_hamming_parameters_examples():
    assert hamming_parameters(P(3, 2, 2)) == (1, 2)
    assert hamming_parameters(P(5, 2, 3)) == (1, 2)
    assert hamming_parameters(P(3, 4, 4)) is None
    # the valency identity holds here but the graph is disconnected
    assert hamming_parameters(P(3, 4, 10)) is None
    assert classify(P(3, 4, 10)).variant == DISCONNECTED
    with pytest.raises(NotHamming):
        hamming_isomorphism(P(3, 4, 4))


def test_theta_examples():
    params = P(3, 2, 2)
    f = params.field
    iso = hamming_isomorphism(params)
    assert iso(0) == (0, 0)
    for j in range(iso.b):
        expected = tuple(f.one if t == j else 0 for t in range(iso.b))
        assert iso(f.omega_pow(j * params.k)) == expected
    w4 = f.omega_pow(4)
    assert w4 == f.neg(f.one)
    assert iso(w4) == (w4, 0)


@pytest.mark.parametrize("p,R,k", [pr for pr in PAIRS_200 if hamming_parameters(P(*pr))])
def test_theta_is_linear_bijection(p, R, k):
    params = P(p, R, k)
    f = params.field
    iso = hamming_isomorphism(params)
    assert len(set(map(tuple, iso.coordinates.tolist()))) == f.q
    rng = np.random.default_rng(0)
    for x, y in rng.integers(0, f.q, size=(50, 2)):
        lhs = iso(f.add(int(x), int(y)))
        rhs = tuple(f.add(a, b) for a, b in zip(iso(int(x)), iso(int(y))))
        assert lhs == rhs


def test_classify_examples():
    c = classify(P(3, 4, 4))
    assert c.variant == CONNECTED_NON_HAMMING and not c.one_dim_affine_case
    c = classify(P(3, 2, 2))
    assert (c.variant, c.a, c.b, c.one_dim_affine_case) == (HAMMING, 1, 2, True)
    c = classify(P(2, 4, 5))
    assert (c.variant, c.a, c.k_prime, c.component_count) == (DISCONNECTED, 2, 1, 4)


def test_classify_needs_no_field():
    # far beyond any buildable field
    k = (2**60 - 1) // 3
    c = classify(ParamPair(2, 60, k))
    assert c.variant == DISCONNECTED and (c.a, c.k_prime, c.component_count) == (2, 1, 2**58)
    assert classify(ParamPair(2, 60, 3)).variant == CONNECTED_NON_HAMMING
    c = classify(ParamPair(3, 4, 4))
    assert c.to_json(ParamPair(3, 4, 4))["schema"] == "gpaley/1"


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(PAIRS_200))
def test_classification_consistent_with_graph(pr):
    params = P(*pr)
    c = classify(params)
    assert c == classify(ParamPair(*pr))
    g = build(params)
    assert g.is_regular(params.valency)
    assert (c.variant == DISCONNECTED) == (not is_connected(g))
    if c.variant == DISCONNECTED:
        assert c.component_count * params.p**c.a == params.q
        assert c.k_prime * (params.q - 1) == (params.p**c.a - 1) * params.k
    if c.variant == HAMMING:
        assert params.valency == c.b * (params.p**c.a - 1)
