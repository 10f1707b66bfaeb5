import random
from itertools import combinations

import networkx as nx
from hypothesis import settings, strategies as st

from tind.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(1, n + 1), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(1, n + 1), 2) if rng.random() < p])


def elimination_decomposition(g: Graph, order):
    """Tree decomposition from eliminating vertices in ``order``: bag = v plus its later fill neighbors."""
    from tind.decomp import TreeDecomposition
    pos = {v: i for i, v in enumerate(order)}
    nbr = {v: set(g.adj(v)) for v in g.vertices}
    bags, parent = [], []
    for v in order:
        later = {u for u in nbr[v] if pos[u] > pos[v]}
        for a in later:
            nbr[a] |= later - {a}
        bags.append(frozenset(later | {v}))
        parent.append(min(later, key=pos.__getitem__) if later else None)
    tree = []
    for i, p in enumerate(parent):
        if p is not None:
            tree.append((i, pos[p]))
        elif i + 1 < len(order):
            tree.append((i, len(order) - 1))  # attach component roots to the last node
    return TreeDecomposition(tuple(bags), tuple(tree))


@st.composite
def graphs_with_decomposition(draw, min_n=1, max_n=9):
    g = draw(graphs(min_n, max_n))
    order = draw(st.permutations(list(g.vertices)))
    return g, elimination_decomposition(g, order)


@st.composite
def refined_decompositions(draw, min_n=1, max_n=9):
    from tind.decomp import RefinedTreeDecomposition
    g, d = draw(graphs_with_decomposition(min_n, max_n))
    ell = draw(st.integers(0, 3))
    ref = []
    for bag in d.bags:
        members = sorted(bag)
        k = draw(st.integers(0, min(ell, len(members))))
        ref.append(frozenset(draw(st.permutations(members))[:k]))
    return g, RefinedTreeDecomposition(d.bags, d.tree, tuple(ref), ell)


def packing_bruteforce(g: Graph, subgraphs, weights):
    """Best weight over all subfamilies that are pairwise disjoint and non-adjacent in g."""
    from fractions import Fraction
    hs = [frozenset(h) for h in subgraphs]
    closed = [h | g.neighborhood(h) for h in hs]
    best = Fraction(0)

    def rec(i, chosen, weight):
        nonlocal best
        if i == len(hs):
            best = max(best, weight)
            return
        if all(not (closed[j] & hs[i]) for j in chosen):
            rec(i + 1, chosen + [i], weight + Fraction(weights[i + 1]))
        rec(i + 1, chosen, weight)

    rec(0, [], Fraction(0))
    return best


def random_weights(rng: random.Random, keys):
    from fractions import Fraction
    return {v: Fraction(rng.randint(0, 12), rng.randint(1, 4)) for v in keys}


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
