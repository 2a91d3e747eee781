import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import gpaley.autgroup as autgroup
from gpaley.autgroup import (
    CHECK_NAMES,
    automorphism_group,
    color_automorphism_group,
    is_affine_map,
    verify_theorem,
)
from gpaley.errors import BoundExceeded, CheckFailed, SearchTimeout
from gpaley.graph_core import Graph, complete_graph, cycle_graph, hamming_graph
from gpaley.paley import GPaleyParams, build
from gpaley.permgroup import affine_generators, agl_one, translations
from gpaley.search import automorphism_search
from oracles import brute_automorphisms, valid_pairs


def P(p, R, k):
    return GPaleyParams.create(p, R, k)


@pytest.mark.parametrize("n", range(1, 8))
def test_complete_graph(n):
    assert automorphism_group(complete_graph(n)).order() == math.factorial(n)


def test_small_examples():
    assert automorphism_group(cycle_graph(5)).order() == 10
    assert automorphism_group(hamming_graph(3, 2)).order() == 72
    assert automorphism_group(Graph(np.zeros((6, 6), dtype=bool))).order() == 720


def test_example_81_20():
    params = P(3, 4, 4)
    A = automorphism_group(build(params))
    assert A.order() == 233280
    assert A.stabilizer_order(0) == 2880
    assert A.is_primitive()
    assert A.normalizes(translations(params.field))
    assert agl_one(params.field).order() == 25920 < A.order()
    assert all(is_affine_map(params, g) for g in A.generators)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 7).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2),
        )
    )
)
def test_search_against_brute_force(data):
    n, bits = data
    adj = np.zeros((n, n), dtype=bool)
    adj[np.triu_indices(n, 1)] = bits
    adj |= adj.T
    brute = brute_automorphisms(adj)
    A = automorphism_group(Graph(adj))
    assert A.order() == len(brute)
    assert all(A.contains(np.array(b)) for b in brute[:50])


def test_colour_group_examples():
    ones = np.ones((6, 6), dtype=int) - np.eye(6, dtype=int)
    assert color_automorphism_group(ones).order() == 720
    g = build(P(13, 1, 3))
    A = automorphism_group(g)
    C = color_automorphism_group(g.adjacency.astype(int))
    assert A.order() == C.order() == 52
    assert all(A.contains(x) for x in C.generators)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([pr for pr in valid_pairs(49)]), st.integers(0, 2**31))
def test_order_invariant_under_relabelling(pr, seed):
    g = build(P(*pr))
    perm = np.random.default_rng(seed).permutation(g.n)
    assert automorphism_group(g).order() == automorphism_group(g.relabel(perm)).order()


def test_hints_do_not_change_the_group():
    params = P(3, 4, 4)
    M = build(params).adjacency.astype(np.int64)
    hints = affine_generators(params.field, 4).generators
    plain = automorphism_search(M)
    hinted = automorphism_search(M, hints=hints)
    assert plain.order == hinted.order == 233280
    with pytest.raises(ValueError):
        automorphism_search(M, hints=[np.roll(np.arange(81), 1)])


def test_verify_example_81_20():
    r = verify_theorem(P(3, 4, 4))
    assert r.computed_aut_order == 233280
    assert r.predicted_aut_order is None
    assert r.stabilizer_order == 2880
    assert r.checks["primitive"] and r.checks["contained_in_affine"] and r.checks["normal_cayley"]
    assert r.checks["one_dim_affine_order"] is None
    assert r.passed


def test_verify_one_dim_and_hamming():
    r = verify_theorem(P(13, 1, 3))
    assert r.computed_aut_order == r.predicted_aut_order == 52
    assert r.checks["one_dim_affine_order"]
    r = verify_theorem(P(3, 2, 2))
    assert r.classification.variant == "Hamming"
    assert r.computed_aut_order == math.factorial(3) ** 2 * 2 == 72
    assert r.checks["hamming_order"] and r.checks["wreath_structure"]


def test_verify_disconnected():
    r = verify_theorem(P(2, 4, 5))
    assert r.computed_aut_order == 24**4 * math.factorial(4) == 7962624
    assert r.checks["wreath_structure"]


def test_report_json_shape():
    r = verify_theorem(P(5, 1, 2))
    out = r.to_json(emit_generators=True)
    assert out["schema"] == "gpaley/1"
    assert list(out["checks"]) == list(CHECK_NAMES)
    assert out["computed_aut_order"] == "10"
    assert all(len(g) == 5 for g in out["generators"])
    assert "generators" not in r.to_json()


def test_failed_check_raises_with_report(monkeypatch):
    monkeypatch.setattr(autgroup, "arc_orbit_size", lambda params: -1)
    with pytest.raises(CheckFailed) as e:
        verify_theorem(P(13, 1, 3))
    assert e.value.name == "arc_transitive_subgroup_present"
    assert e.value.report.checks["arc_transitive_subgroup_present"] is False
    r = verify_theorem(P(13, 1, 3), raise_on_failure=False)
    assert not r.passed and r.failed_checks() == ["arc_transitive_subgroup_present"]


def test_timeout_and_bounds():
    with pytest.raises(SearchTimeout):
        verify_theorem(P(3, 4, 4), timeout=1e-9)
    with pytest.raises(BoundExceeded):
        verify_theorem(P(2, 11, 23))
    with pytest.raises(BoundExceeded):
        automorphism_group(complete_graph(10), bound=8)


@pytest.mark.parametrize("pr", list(valid_pairs(8)))
def test_every_small_gpaley_against_brute_force(pr):
    g = build(P(*pr))
    brute = brute_automorphisms(g.adjacency)
    A = automorphism_group(g)
    assert A.order() == len(brute)
    assert all(A.contains(np.array(b)) for b in brute)


@pytest.mark.parametrize("pr", [(3, 4, 4), (13, 1, 3), (3, 2, 2), (2, 4, 5), (5, 2, 3)])
def test_relabelled_copies_agree(pr):
    g = build(P(*pr))
    order = automorphism_group(g).order()
    for seed in range(5):
        perm = np.random.default_rng(seed).permutation(g.n)
        assert automorphism_group(g.relabel(perm)).order() == order


def test_stabiliser_derived_series_81_20():
    # the point stabiliser of Aut(GPaley(81,20)) has a normal subgroup of order 360
    A0 = automorphism_group(build(P(3, 4, 4))).stabilizer(0)
    assert A0.order() == 2880
    D1 = A0.derived_subgroup()
    D2 = D1.derived_subgroup()
    assert (D1.order(), D2.order()) == (720, 360)
    assert D2.derived_subgroup().order() == 360
    assert A0.normalizes(D2)
