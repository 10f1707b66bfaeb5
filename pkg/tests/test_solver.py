import random
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given

from conftest import packing_bruteforce, random_weights, refined_decompositions, to_nx
from tind.classes import decompose_k2q, decompose_k5m_free, decompose_w4_free
from tind.decomp import (RefinedTreeDecomposition, TreeDecomposition, independence_number,
                         residual_independence_number, validate)
from tind.errors import PreconditionError
from tind.framework import cycle_decomposition
from tind.generators import biclique, cycle, path, random_gnp
from tind.graph import Graph
from tind.oracles import mwis_bruteforce
from tind.solver import (build_derived_instance, derived_graph, enumerate_bag_independent_sets,
                         independent_packing, make_nice, mwis_td, state_bound)

ONES = lambda g: {v: Fraction(1) for v in g.vertices}


def check_nice(d, nice):
    nodes = nice.nodes
    assert nodes[nice.root].bag == frozenset()
    originals = [frozenset(b) for b in d.bags]
    seen = set()
    for i, node in enumerate(nodes):
        assert node.refinement <= node.bag
        assert any(node.bag <= b for b in originals)
        kids = [nodes[c] for c in node.children]
        seen.update(node.children)
        if node.kind == "leaf":
            assert not kids and node.bag == frozenset()
        elif node.kind == "introduce":
            assert len(kids) == 1 and node.bag == kids[0].bag | {node.vertex} and node.vertex not in kids[0].bag
        elif node.kind == "forget":
            assert len(kids) == 1 and node.bag == kids[0].bag - {node.vertex} and node.vertex in kids[0].bag
        else:
            assert node.kind == "join" and len(kids) == 2 and all(k.bag == node.bag for k in kids)
    assert seen == set(range(len(nodes))) - {nice.root}


# ------------------------------------------------------------------ make_nice

def test_make_nice_single_bag():
    d = TreeDecomposition((frozenset({1, 2}),), ())
    nice = make_nice(d)
    check_nice(d, nice)
    assert [n.kind for n in nice.nodes] == ["leaf", "introduce", "introduce", "forget", "forget"]


def test_make_nice_equal_bags_and_path():
    d = TreeDecomposition((frozenset({1, 2}), frozenset({1, 2})), ((0, 1),))
    nice = make_nice(d)
    check_nice(d, nice)
    assert "join" not in [n.kind for n in nice.nodes]
    d = TreeDecomposition((frozenset({1, 2}), frozenset({2, 3})), ((0, 1),))
    nice = make_nice(d)
    check_nice(d, nice)
    kinds = [(n.kind, n.vertex) for n in nice.nodes]
    assert kinds == [("leaf", None), ("introduce", 2), ("introduce", 3), ("forget", 3),
                     ("introduce", 1), ("forget", 1), ("forget", 2)]


def test_make_nice_star_uses_joins():
    d = TreeDecomposition(tuple(frozenset({0 + 1, i}) for i in range(2, 6)), ((0, 1), (0, 2), (0, 3)))
    nice = make_nice(d)
    check_nice(d, nice)
    assert sum(n.kind == "join" for n in nice.nodes) == 2


@given(refined_decompositions(1, 9))
def test_make_nice_invariants(case):
    g, d = case
    nice = make_nice(d)
    check_nice(d, nice)
    assert nice.size <= 2 * d.size * (max(len(b) for b in d.bags) + 2)


# ------------------------------------------------------------ enumeration

def brute_independent_subsets(g, bag):
    bag = sorted(bag)
    return {frozenset(s) for r in range(len(bag) + 1) for s in combinations(bag, r) if g.is_independent(s)}


def test_enumerate_examples():
    k3 = Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
    assert sorted(map(sorted, enumerate_bag_independent_sets(k3, {1, 2, 3}, (), 1))) == [[], [1], [2], [3]]
    e2 = Graph.from_edges(2)
    got = list(enumerate_bag_independent_sets(e2, {1, 2}, {1}, 1))
    assert sorted(map(sorted, got)) == [[], [1], [1, 2], [2]]
    k33 = biclique(3, 3)
    # the side outside U is itself independent, so k must be 3: subsets of one side, never both
    got = list(enumerate_bag_independent_sets(k33, k33.vertices, {1, 2, 3}, 3))
    assert len(got) == len(set(got)) == 8 + 7
    assert set(got) == brute_independent_subsets(k33, k33.vertices)
    for k in (1, 2):
        with pytest.raises(PreconditionError):
            list(enumerate_bag_independent_sets(k33, k33.vertices, {1, 2, 3}, k))


@given(refined_decompositions(1, 9))
def test_enumerate_matches_brute_force(case):
    g, d = case
    k = residual_independence_number(g, d)
    for bag, u in zip(d.bags, d.refinement):
        got = list(enumerate_bag_independent_sets(g, bag, u, k))
        assert len(got) == len(set(got))
        assert set(got) == brute_independent_subsets(g, bag)
        assert len(got) <= state_bound(len(bag), len(u & bag), k)


# ---------------------------------------------------------------------- MWIS

def test_mwis_examples():
    p3 = path(3)
    d = TreeDecomposition((frozenset({1, 2}), frozenset({2, 3})), ((0, 1),))
    best, w = mwis_td(p3, {1: 1, 2: 5, 3: 1}, d, 1)
    assert w == 5 and best == {2}
    c5 = cycle(5)
    d, _ = cycle_decomposition(c5, 0)
    best, w = mwis_td(c5, ONES(c5), d, 2)
    assert w == 2 and best == {1, 3}
    c6 = cycle(6)
    best, w = mwis_td(c6, ONES(c6), cycle_decomposition(c6, 0)[0], 2)
    assert (best, w) == (frozenset({1, 3, 5}), 3)


def test_mwis_errors():
    c5 = cycle(5)
    d, _ = cycle_decomposition(c5, 0)
    with pytest.raises(PreconditionError):
        mwis_td(c5, ONES(c5), d, 1)
    with pytest.raises(PreconditionError):
        mwis_td(c5, {1: 1}, d, 2)
    bad = TreeDecomposition((frozenset({1, 2, 3}),), ())
    with pytest.raises(PreconditionError):
        mwis_td(c5, ONES(c5), bad, 2)


def test_mwis_empty_graph():
    assert mwis_td(Graph(()), {}, TreeDecomposition((), ()), 0) == (frozenset(), 0)


@given(refined_decompositions(1, 9))
def test_mwis_matches_bruteforce_on_refined(case):
    g, d = case
    rng = random.Random(g.m * 31 + g.n)
    w = random_weights(rng, g.vertices)
    k = residual_independence_number(g, d)
    assert mwis_td(g, w, d, k) == mwis_bruteforce(g, w)


@pytest.mark.parametrize("seed", range(4))
def test_mwis_matches_bruteforce_on_pipelines(seed):
    rng = random.Random(seed)
    for _ in range(10):
        g = random_gnp(rng.randint(1, 14), rng.uniform(0.15, 0.7), rng.randrange(10 ** 6))
        w = random_weights(rng, g.vertices)
        expect = mwis_bruteforce(g, w)
        for cert in (decompose_w4_free(g), decompose_k5m_free(g), decompose_k2q(g, 3)):
            if cert.in_class:
                d = cert.decomposition
                best, weight = mwis_td(g, w, d, residual_independence_number(g, d))
                assert (best, weight) == expect
                assert g.is_independent(best) and weight == sum(w[v] for v in best)


# ------------------------------------------------------------------ packings

def c6_edges_case():
    c6 = cycle(6)
    d, _ = cycle_decomposition(c6, 0)
    return c6, [frozenset(e) for e in c6.edges()], d


def test_derived_graph_examples():
    c6, hs, d = c6_edges_case()
    square = nx.power(nx.line_graph(to_nx(c6)), 2)
    derived = derived_graph(c6, hs)
    index = {h: j for j, h in enumerate(hs, 1)}
    assert derived.m == square.number_of_edges()
    for a, b in square.edges():
        assert derived.has_edge(index[frozenset(a)], index[frozenset(b)])
    singletons = [frozenset({v}) for v in c6.vertices]
    inst, dd = build_derived_instance(c6, singletons, {j: 1 for j in range(1, 7)}, d)
    assert inst.derived == c6 and dd.bags == d.bags and dd.tree == d.tree
    inst, _ = build_derived_instance(c6, [frozenset({1, 2, 3})], {1: 1}, d)
    assert inst.derived.n == 1 and inst.derived.m == 0


def test_packing_examples():
    c6, hs, d = c6_edges_case()
    chosen, w = independent_packing(c6, hs, {j: 1 for j in range(1, 7)}, d)
    assert w == 2 and len(chosen) == 2
    diamond = Graph.from_edges(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
    dd = TreeDecomposition((frozenset({1, 2, 3}), frozenset({2, 3, 4})), ((0, 1),))
    edges = [frozenset(e) for e in diamond.edges()]
    assert independent_packing(diamond, edges, {j: 1 for j in range(1, 6)}, dd)[1] == 1
    p3 = path(3)
    d3 = TreeDecomposition((frozenset({1, 2}), frozenset({2, 3})), ((0, 1),))
    chosen, w = independent_packing(p3, [frozenset({v}) for v in (1, 2, 3)], {1: 1, 2: 5, 3: 1}, d3)
    assert (chosen, w) == (frozenset({2}), 5)


def test_packing_errors():
    c6, hs, d = c6_edges_case()
    with pytest.raises(PreconditionError):
        build_derived_instance(c6, [frozenset({1, 4})], {1: 1}, d)
    with pytest.raises(PreconditionError):
        build_derived_instance(c6, [frozenset()], {1: 1}, d)
    with pytest.raises(PreconditionError):
        build_derived_instance(c6, [frozenset({1, 9})], {1: 1}, d)
    with pytest.raises(PreconditionError):
        build_derived_instance(c6, hs, {1: 1}, d)
    with pytest.raises(PreconditionError):
        build_derived_instance(c6, [frozenset({1})], {1: -1}, d)


def random_connected_triples(rng, g, count):
    out = []
    for _ in range(count * 4):
        if len(out) == count:
            break
        v = rng.choice(g.vertices)
        h = {v}
        while len(h) < 3:
            frontier = sorted(g.neighborhood(h))
            if not frontier:
                break
            h.add(rng.choice(frontier))
        if len(h) == 3:
            out.append(frozenset(h))
    return out


@pytest.mark.parametrize("seed", range(3))
def test_packing_matches_bruteforce(seed):
    rng = random.Random(seed)
    for _ in range(10):
        g = random_gnp(rng.randint(2, 10), rng.uniform(0.2, 0.6), rng.randrange(10 ** 6))
        cert = decompose_k2q(g, 3)
        d = cert.decomposition
        for hs in ([frozenset(e) for e in g.edges()], random_connected_triples(rng, g, 8)):
            if not hs:
                continue
            w = random_weights(rng, range(1, len(hs) + 1))
            chosen, weight = independent_packing(g, hs, w, d)
            assert weight == packing_bruteforce(g, hs, w)
            assert weight == sum(w[j] for j in chosen)
            inst, dd = build_derived_instance(g, hs, w, d)
            assert validate(inst.derived, dd)
            assert independence_number(inst.derived, dd) <= independence_number(g, d)
