"""Maximum-weight independent set over refined tree decompositions with bounded
residual independence number, and maximum-weight independent packings via the
derived conflict graph.

DP states at a node are the independent subsets of its bag; with refinement
set U and residual bound k there are at most 2^|U| * sum_{i<=k} C(|X \\ U|, i)
of them.  Values are (weight, tie key, chosen set); both weight and tie key are
additive, so the DP optimum equals the brute-force optimum including ties.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

from .decomp import (RefinedTreeDecomposition, TreeDecomposition, as_refined, independence_number,
                     require_valid)
from .errors import PreconditionError
from .graph import Graph, check_weights
from .oracles import tie_key


@dataclass(frozen=True)
class NiceNode:
    kind: str  # leaf, introduce, forget, join
    bag: FrozenSet[int]
    refinement: FrozenSet[int]
    vertex: Optional[int] = None
    children: Tuple[int, ...] = ()


@dataclass(frozen=True)
class NiceDecomposition:
    nodes: Tuple[NiceNode, ...]
    root: int

    @property
    def size(self) -> int:
        return len(self.nodes)


class _NiceBuilder:
    def __init__(self):
        self.nodes: List[NiceNode] = []

    def add(self, kind, bag, ref, vertex=None, children=()) -> int:
        self.nodes.append(NiceNode(kind, frozenset(bag), frozenset(ref) & frozenset(bag), vertex, tuple(children)))
        return len(self.nodes) - 1

    def morph(self, top: int, target: FrozenSet[int], ref_from: FrozenSet[int], ref_to: FrozenSet[int]) -> int:
        """Forget then introduce one vertex at a time, from node ``top`` up to bag ``target``."""
        bag = set(self.nodes[top].bag)
        for v in sorted(bag - target):
            bag.discard(v)
            top = self.add("forget", bag, ref_from, v, (top,))
        for v in sorted(target - bag):
            bag.add(v)
            top = self.add("introduce", bag, ref_to, v, (top,))
        return top


def make_nice(d: TreeDecomposition, root: int = 0) -> NiceDecomposition:
    """Leaf / introduce / forget / join normalization, rooted at ``root`` with empty root bag.

    Nice bags are subsets of original bags; refinement sets are restricted accordingly.
    """
    d = as_refined(d)
    if not d.size:
        raise PreconditionError("empty decomposition")
    nbrs = d.neighbors()
    parent = {root: None}
    order = [root]
    for t in order:
        for c in nbrs[t]:
            if c not in parent:
                parent[c] = t
                order.append(c)
    if len(order) != d.size:
        raise PreconditionError("decomposition tree is not connected")
    b = _NiceBuilder()
    top: Dict[int, int] = {}
    for t in reversed(order):
        bag, ref = d.bags[t], d.refinement[t]
        kids = [c for c in nbrs[t] if parent.get(c) == t]
        tops = [b.morph(top[c], bag, d.refinement[c], ref) for c in kids]
        if not tops:
            leaf = b.add("leaf", (), ())
            tops = [b.morph(leaf, bag, frozenset(), ref)]
        cur = tops[0]
        for other in tops[1:]:
            cur = b.add("join", bag, ref, None, (cur, other))
        top[t] = cur
    r = b.morph(top[root], frozenset(), d.refinement[root], frozenset())
    return NiceDecomposition(tuple(b.nodes), r)


def _independent_extensions(g: Graph, pool: Sequence[int], size_cap: int) -> Iterator[FrozenSet[int]]:
    """Independent subsets of ``pool`` of size at most ``size_cap``, each exactly once."""
    def rec(start: int, chosen: List[int], blocked: FrozenSet[int]):
        yield frozenset(chosen)
        if len(chosen) == size_cap:
            return
        for i in range(start, len(pool)):
            v = pool[i]
            if v not in blocked:
                chosen.append(v)
                yield from rec(i + 1, chosen, blocked | g.adj(v))
                chosen.pop()
    yield from rec(0, [], frozenset())


def enumerate_bag_independent_sets(g: Graph, bag, refinement, k: int) -> Iterator[FrozenSet[int]]:
    """All independent sets of G[bag]: (A in U) x (B outside U with |B| <= k, no A-B edges).

    Raises PreconditionError when more than k pairwise nonadjacent vertices lie outside U.
    """
    bag = frozenset(bag)
    u = frozenset(refinement) & bag
    rest = sorted(bag - u)
    outer = list(_independent_extensions(g, rest, k + 1))
    if any(len(s) > k for s in outer):
        witness = sorted(next(s for s in outer if len(s) > k))
        raise PreconditionError(f"residual bound {k} violated: independent set {witness} outside U")
    for a in _independent_extensions(g, sorted(u), len(u)):
        na = g.neighborhood(a) if a else frozenset()
        for s in outer:
            if not s & na:
                yield a | s


def state_bound(bag_size: int, ref_size: int, k: int) -> int:
    rest = bag_size - ref_size
    return (1 << ref_size) * sum(comb(rest, i) for i in range(k + 1))


Value = Tuple[Fraction, int, FrozenSet[int]]


def mwis_td(g: Graph, weights: Mapping[int, Fraction], d: TreeDecomposition, k: int,
            check: bool = True) -> Tuple[FrozenSet[int], Fraction]:
    """Maximum-weight independent set by DP over a nice form of ``d``.

    Among optimal sets, returns the one preferred by ``oracles.tie_key``.
    """
    check_weights(g, weights)
    if g.n == 0:
        return frozenset(), Fraction(0)
    if check:
        require_valid(g, d)
    w = {v: Fraction(weights[v]) for v in g.vertices}
    top = g.vertices[-1]
    nice = make_nice(d)
    tables: List[Optional[Dict[FrozenSet[int], Value]]] = [None] * nice.size

    def add(val: Value, v: int) -> Value:
        return val[0] + w[v], val[1] + (1 << (top - v)), val[2] | {v}

    for i, node in enumerate(nice.nodes):
        states = list(enumerate_bag_independent_sets(g, node.bag, node.refinement, k))
        if len(states) > state_bound(len(node.bag), len(node.refinement), k):
            raise AssertionError("state count exceeds the 2^l * n^k bound")
        table: Dict[FrozenSet[int], Value] = {}
        if node.kind == "leaf":
            table[frozenset()] = (Fraction(0), 0, frozenset())
        elif node.kind == "introduce":
            child = tables[node.children[0]]
            v = node.vertex
            for s in states:
                if v in s:
                    prev = child.get(s - {v})
                    if prev is not None:
                        table[s] = add(prev, v)
                elif s in child:
                    table[s] = child[s]
        elif node.kind == "forget":
            child = tables[node.children[0]]
            v = node.vertex
            for s in states:
                cands = [x for x in (child.get(s), child.get(s | {v})) if x is not None]
                if cands:
                    table[s] = max(cands, key=lambda x: (x[0], x[1]))
        else:
            left, right = tables[node.children[0]], tables[node.children[1]]
            for s in states:
                a, b = left.get(s), right.get(s)
                if a is not None and b is not None:
                    ws = sum((w[v] for v in s), Fraction(0))
                    table[s] = (a[0] + b[0] - ws, a[1] + b[1] - tie_key(s, top), a[2] | b[2])
        for c in node.children:
            tables[c] = None
        tables[i] = table
    _, _, best = tables[nice.root][frozenset()]
    weight = sum((w[v] for v in best), Fraction(0))
    if check and not g.is_independent(best):
        raise AssertionError("DP returned a dependent set")
    return best, weight


# ------------------------------------------------------------------ packings

@dataclass(frozen=True)
class PackingInstance:
    host: Graph
    subgraphs: Tuple[FrozenSet[int], ...]  # H_j is subgraphs[j - 1]
    weights: Dict[int, Fraction]
    derived: Graph


def derived_graph(g: Graph, subgraphs: Sequence[FrozenSet[int]]) -> Graph:
    """Conflict graph on 1..|J|: H_i ~ H_j iff they share a vertex or a G-edge joins them."""
    closed = [frozenset(h) | g.neighborhood(h) for h in subgraphs]
    edges = [(i + 1, j + 1) for i in range(len(subgraphs)) for j in range(i + 1, len(subgraphs))
             if closed[i] & subgraphs[j]]
    return Graph(range(1, len(subgraphs) + 1), edges)


def build_derived_instance(g: Graph, subgraphs, weights: Mapping[int, Fraction],
                           d: TreeDecomposition) -> Tuple[PackingInstance, TreeDecomposition]:
    """Derived conflict graph plus the decomposition with bags {j : H_j meets X_t} on the same tree."""
    require_valid(g, d)
    hs = tuple(frozenset(h) for h in subgraphs)
    for j, h in enumerate(hs, 1):
        if not h:
            raise PreconditionError(f"subgraph {j} is empty")
        if not all(g.has_vertex(v) for v in h):
            raise PreconditionError(f"subgraph {j} has vertices outside G")
        if not g.subgraph(h).is_connected():
            raise PreconditionError(f"subgraph {j} is not connected")
    w = {}
    for j in range(1, len(hs) + 1):
        if j not in weights:
            raise PreconditionError(f"no weight for subgraph {j}")
        w[j] = Fraction(weights[j])
        if w[j] < 0:
            raise PreconditionError(f"negative weight for subgraph {j}")
    derived = derived_graph(g, hs)
    bags = [frozenset(j for j, h in enumerate(hs, 1) if h & bag) for bag in d.bags]
    return PackingInstance(g, hs, w, derived), TreeDecomposition(tuple(bags), d.tree)


def independent_packing(g: Graph, subgraphs, weights: Mapping[int, Fraction], d: TreeDecomposition,
                        k: Optional[int] = None) -> Tuple[FrozenSet[int], Fraction]:
    """Maximum-weight independent packing: MWIS on the derived instance with ell = 0."""
    inst, dd = build_derived_instance(g, subgraphs, weights, d)
    if k is None:
        k = independence_number(g, d)
    return mwis_td(inst.derived, inst.weights, dd.refined((), 0), k)
