import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpaley.errors import DegreeMismatch, NotTransitive
from gpaley.finite_field import build_field
from gpaley.permgroup import (
    PermutationGroup,
    affine_generators,
    agl_one,
    compose,
    from_cycles,
    identity,
    inverse,
    translations,
    wreath_product_action,
)
from oracles import group_closure


def sym(n):
    return PermutationGroup([from_cycles(n, [0, 1]), from_cycles(n, list(range(n)))], n)


def alt(n):
    return PermutationGroup([from_cycles(n, [0, 1, i]) for i in range(2, n)], n)


def parity(perm):
    perm = list(perm)
    seen, sign = set(), 0
    for s in range(len(perm)):
        length = 0
        while s not in seen:
            seen.add(s)
            s = perm[s]
            length += 1
        if length:
            sign += length - 1
    return sign % 2


def test_order_examples():
    assert PermutationGroup([], 5).order() == 1
    assert PermutationGroup([from_cycles(7, list(range(7)))]).order() == 7
    s5 = sym(5)
    assert s5.order() == 120 == len(group_closure(s5.generators, 5))


def test_stabilizer_examples():
    z7 = PermutationGroup([from_cycles(7, list(range(7)))])
    assert z7.stabilizer_order(3) == 1
    s5 = sym(5)
    assert all(s5.stabilizer_order(v) == 24 for v in range(5))
    assert s5.stabilizer(2).order() == 24


def test_transitivity_and_blocks():
    z7 = PermutationGroup([from_cycles(7, list(range(7)))])
    assert z7.is_transitive() and z7.is_primitive()
    z4 = PermutationGroup([from_cycles(4, [0, 1, 2, 3])])
    assert z4.minimal_block(0, 2) == [0, 2]
    assert not z4.is_primitive()
    intrans = PermutationGroup([from_cycles(4, [0, 1])])
    assert not intrans.is_transitive()
    with pytest.raises(NotTransitive):
        intrans.is_primitive()


def test_contains_examples():
    a5 = alt(5)
    assert a5.order() == 60
    assert a5.contains(identity(5))
    assert all(a5.contains(g) for g in a5.generators)
    odd = from_cycles(5, [0, 1])
    assert parity(odd) == 1 and not a5.contains(odd)


def test_normalizes_examples():
    s3 = sym(3)
    assert s3.normalizes(s3)
    z3 = PermutationGroup([from_cycles(3, [0, 1, 2])])
    assert s3.normalizes(z3)
    s4 = sym(4)
    not_normal = PermutationGroup([from_cycles(4, [0, 1])])
    assert not s4.normalizes(not_normal)
    with pytest.raises(DegreeMismatch):
        s4.normalizes(s3)


def test_derived_and_normal_closure():
    assert sym(4).derived_subgroup().order() == 12
    assert alt(4).derived_subgroup().order() == 4
    assert sym(5).normal_closure([from_cycles(5, [0, 1, 2])]).order() == 60


def test_affine_examples():
    f13 = build_field(13, 1)
    # k = q-1 leaves only translations and Frobenius
    assert affine_generators(build_field(2, 3), 7).order() == 8 * 3
    assert affine_generators(f13, 3).order() == 52
    f81 = build_field(3, 4)
    assert affine_generators(f81, 4).order() == 6480
    assert agl_one(build_field(3, 2)).order() == 144
    assert agl_one(f81).order() == 25920
    T = translations(f81)
    assert T.is_transitive() and T.order() == 81


def test_affine_orders_against_closure():
    for p, R, k in [(5, 1, 2), (3, 2, 2), (2, 3, 7), (7, 1, 3)]:
        f = build_field(p, R)
        X = affine_generators(f, k)
        assert len(group_closure(X.generators, f.q)) == X.order() == f.q * (f.q - 1) // k * R


def test_wreath_examples():
    w22 = wreath_product_action(2, 2)
    assert w22.order() == 8
    assert wreath_product_action(3, 2).order() == 72
    for a, b in [(2, 3), (3, 3), (4, 2), (5, 2), (2, 4)]:
        assert wreath_product_action(a, b).order() == math.factorial(a) ** b * math.factorial(b)
    assert len(group_closure(wreath_product_action(3, 2).generators, 9)) == 72


def test_json_round_trip():
    g = sym(6)
    back = PermutationGroup.from_json(g.to_json())
    assert back.order() == 720
    bad = dict(g.to_json(), order="719")
    with pytest.raises(ValueError):
        PermutationGroup.from_json(bad)


def test_from_strong_generators_verify():
    g = sym(5)
    sgs = g.strong_generators
    h = PermutationGroup.from_strong_generators(sgs, g.base, 5)
    assert h.verify_strong() and h.order() == 120


perm_lists = st.integers(2, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.permutations(range(n)), min_size=0, max_size=3))
)


def _brute_blocks(elements, n):
    """Nontrivial blocks containing 0, by checking every subset."""
    out = []
    for size in range(2, n):
        if n % size:
            continue
        for rest in itertools.combinations(range(1, n), size - 1):
            B = {0, *rest}
            if all(len(B & {g[v] for v in B}) in (0, size) for g in elements):
                out.append(B)
    return out


@settings(max_examples=150, deadline=None)
@given(perm_lists)
def test_group_engine_against_closure(data):
    n, gens = data
    G = PermutationGroup([np.array(g) for g in gens], n)
    elements = group_closure(gens, n)
    assert G.order() == len(elements)
    assert G.verify_strong()
    for v in range(n):
        assert G.stabilizer_order(v) == sum(1 for e in elements if e[v] == v)
    orbit0 = {e[0] for e in elements}
    assert sorted(G.orbit(0)) == sorted(orbit0)
    assert G.is_transitive() == (len(orbit0) == n)
    if G.is_transitive():
        assert G.is_primitive() == (not _brute_blocks(elements, n))
    # membership agrees on a handful of probes
    rng = np.random.default_rng(len(elements))
    for _ in range(10):
        probe = tuple(int(v) for v in rng.permutation(n))
        assert G.contains(np.array(probe)) == (probe in elements)


@settings(max_examples=50, deadline=None)
@given(perm_lists)
def test_compose_and_inverse(data):
    n, gens = data
    for g in gens:
        g = np.array(g)
        assert np.array_equal(compose(g, inverse(g)), identity(n))
        for h in gens:
            h = np.array(h)
            assert [h[g[x]] for x in range(n)] == compose(g, h).tolist()


@settings(max_examples=100, deadline=None)
@given(perm_lists, st.integers(0, 2**16))
def test_known_order_construction(data, seed):
    n, gens = data
    gens = [np.array(g) for g in gens]
    elements = group_closure(gens, n)
    G = PermutationGroup.from_known_order(gens, n, len(elements), seed=seed)
    assert G.order() == len(elements)
    assert G.verify_strong()
    rng = np.random.default_rng(seed)
    for _ in range(10):
        probe = tuple(int(v) for v in rng.permutation(n))
        assert G.contains(np.array(probe)) == (probe in elements)


def test_known_order_rejects_wrong_order():
    s5 = [from_cycles(5, [0, 1]), from_cycles(5, list(range(5)))]
    # too small: the chain outgrows it
    with pytest.raises(AssertionError):
        PermutationGroup.from_known_order(s5, 5, 60)
    # too large: the chain stalls, the fallback finds 120
    with pytest.raises(AssertionError):
        PermutationGroup.from_known_order(s5, 5, 240)


def test_known_order_large_wreath():
    W = wreath_product_action(2, 7)
    G = PermutationGroup.from_known_order(W.generators, W.degree, 2**7 * math.factorial(7))
    assert G.order() == W.order()
