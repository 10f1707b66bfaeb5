import random
from itertools import chain, combinations

import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from tind.classes import w4_solver
from tind.connectivity import spqr_tree
from tind.decomp import (check_fmapping, independence_number, is_fstar_covering, residual_independence_number,
                         single_bag, strip_refinement, validate)
from tind.errors import PreconditionError
from tind.framework import (Rejected, Rejection, SolverContractError, TriconnectedInstance, TriconnectedSolver,
                            cycle_decomposition, decompose_biconnected, decompose_biconnected_traced,
                            decompose_general, r_node_instances, trivial_solver)
from tind.generators import complete, cycle, path, random_ears, subdivided_complete, wheel
from tind.graph import Graph
from tind.oracles import find_induced_minor_model


def whole_bag_solver(ell):
    """Single bag with the ell smallest vertices as U; k is whatever that leaves."""
    def solve(inst):
        g = inst.graph
        return single_bag(g.vertices, sorted(g.vertices)[:ell], ell), {e: 0 for e in inst.f}
    return solve


def test_cycle_decomposition_examples():
    c6 = cycle(6)
    d, fmap = cycle_decomposition(c6, 3, c6.edges())
    assert d.size == 4 and all(len(b) == 3 for b in d.bags)
    assert residual_independence_number(c6, d) == 0 and independence_number(c6, strip_refinement(d)) == 2
    assert check_fmapping(d, fmap, c6.edges())
    # v_i v_{i+1} -> t_i, v_{h-1} v_h -> t_{h-2}, v_h v_1 -> t_1 (0-based node ids)
    assert fmap == {(1, 2): 0, (2, 3): 1, (3, 4): 2, (4, 5): 3, (5, 6): 3, (1, 6): 0}
    d, _ = cycle_decomposition(cycle(4), 0)
    assert d.size == 2 and independence_number(cycle(4), d) == 2
    d, _ = cycle_decomposition(cycle(3), 0)
    assert d.bags == (frozenset({1, 2, 3}),) and independence_number(cycle(3), d) == 1
    with pytest.raises(PreconditionError):
        cycle_decomposition(path(4), 0)


@pytest.mark.parametrize("n", range(3, 30))
@pytest.mark.parametrize("ell", [0, 1, 2, 3])
def test_cycle_decomposition_measures(n, ell):
    c = cycle(n)
    d, fmap = cycle_decomposition(c, ell, c.edges())
    assert validate(c, d) and check_fmapping(d, fmap, c.edges())
    if n > 3:
        assert residual_independence_number(c, d) == max(0, min(2, 3 - ell))
        assert independence_number(c, d) == 2


def test_biconnected_examples():
    c6 = cycle(6)
    d = decompose_biconnected(c6, trivial_solver(0, 3))
    assert d == cycle_decomposition(c6, 3)[0]
    g = subdivided_complete(4)
    d = decompose_biconnected(g, w4_solver())
    assert validate(g, d) and residual_independence_number(g, d) <= 1
    assert independence_number(g, strip_refinement(d)) <= 4
    k4 = complete(4)
    solver = w4_solver()
    expect, _ = solver.solve(TriconnectedInstance(k4))
    assert decompose_biconnected(k4, solver) == expect
    with pytest.raises(PreconditionError):
        decompose_biconnected(path(3), solver)


def test_general_examples():
    cactus = Graph.from_edges(12, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (5, 6), (6, 7), (7, 8), (8, 9), (5, 9),
                                   (9, 10), (10, 11), (11, 12), (10, 12)])
    d = decompose_general(cactus, trivial_solver(0, 0))
    assert validate(cactus, d) and independence_number(cactus, d) <= 2
    tree = Graph.from_edges(7, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)])
    d = decompose_general(tree, trivial_solver(0, 0))
    assert all(len(b) == 2 for b in d.bags if len(b) > 1) and independence_number(tree, d) == 1
    d = decompose_general(Graph([1], []), trivial_solver())
    assert d.bags == (frozenset({1}),)
    with pytest.raises(PreconditionError):
        decompose_general(Graph([], []), trivial_solver())


def test_rejection_propagates_with_skeleton():
    g = Graph(list(range(1, 8)), wheel(4).edges() + [(6, 7), (5, 6)])
    with pytest.raises(Rejected) as info:
        decompose_general(g, w4_solver())
    r = info.value.rejection
    assert r.kind == "hole" and r.skeleton == wheel(4)


def test_contract_violation_detected():
    liar = TriconnectedSolver(0, 3, whole_bag_solver(0))
    with pytest.raises(SolverContractError):
        decompose_biconnected(complete(5), liar)
    uncovered = TriconnectedSolver(1, 3, lambda inst: (single_bag(inst.graph.vertices, (), 3), {}))
    with pytest.raises(SolverContractError):
        decompose_biconnected(subdivided_complete(4), uncovered)


def covering_solve(ell):
    """Single bag whose U is a greedy cover of F* (rejects when it needs more than ell vertices)."""
    def solve(inst):
        u = set()
        for a, b in sorted(inst.fstar):
            if a not in u and b not in u:
                u.add(a)
        if len(u) > ell:
            return Rejection("cover too large", kind="shape")
        return single_bag(inst.graph.vertices, u, ell), {e: 0 for e in inst.f}
    return solve


@pytest.mark.parametrize("seed", range(40))
@pytest.mark.parametrize("ell", [0, 2, 3])
def test_residual_bound_random(seed, ell):
    rng = random.Random(seed)
    g = random_ears(rng.randint(3, 25), seed, rng.choice([0.1, 0.5, 0.9]))
    solve = covering_solve(ell)
    outs = [solve(inst) for inst in r_node_instances(g)]
    if any(isinstance(o, Rejection) for o in outs):
        with pytest.raises(Rejected):
            decompose_biconnected(g, TriconnectedSolver(g.n, ell, solve))
        return
    k = max([residual_independence_number(inst.graph, o[0]) for inst, o in zip(r_node_instances(g), outs)],
            default=0)
    d = decompose_biconnected(g, TriconnectedSolver(k, ell, solve))
    assert validate(g, d)
    assert residual_independence_number(g, d) <= max(3 - ell, k)


@pytest.mark.parametrize("seed", range(40))
def test_fstar_cover_propagation_w4(seed):
    rng = random.Random(seed)
    g = random_ears(rng.randint(4, 30), seed, 0.7)
    try:
        d, origin = decompose_biconnected_traced(g, w4_solver())
    except Rejected:
        return
    s = spqr_tree(g)
    for t, a in enumerate(origin):
        node = s.nodes[a]
        if node.kind != "R":
            continue
        for u, v in node.virtual:
            if u in d.bags[t] and v in d.bags[t]:
                assert {u, v} & d.refinement[t]
        # hence G and G_a agree on the residual part of the bag
        rest = d.bags[t] - d.refinement[t]
        assert g.subgraph(rest) == node.skeleton().subgraph(rest)
    assert residual_independence_number(g, d) <= 1


def subsets(xs):
    return chain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1))


@pytest.mark.parametrize("g", [subdivided_complete(4),
                               Graph.from_edges(9, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (1, 5), (5, 2),
                                                    (3, 6), (6, 4), (2, 7), (7, 8), (8, 3), (4, 9), (9, 1)])])
def test_virtual_edges_are_safe(g):
    # the input is W4-free; deleting any subset of F_a* from G_a keeps the skeleton W4-free
    assert find_induced_minor_model(g, wheel(4)) is None
    for inst in r_node_instances(g, "w4"):
        for drop in subsets(sorted(inst.fstar)):
            h = Graph(inst.graph.vertices, [e for e in inst.graph.edges() if e not in drop])
            assert find_induced_minor_model(h, wheel(4)) is None


def test_instance_contract():
    with pytest.raises(PreconditionError):
        TriconnectedInstance(complete(4), f=[(1, 2)], fstar=[(1, 3)])
    with pytest.raises(PreconditionError):
        TriconnectedInstance(cycle(4), f=[(1, 3)])
