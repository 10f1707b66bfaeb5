"""Chordal graphs: search orderings, recognition with hole certificates,
moplex partitions, clique trees with F-mappings, and LEX-M triangulation.

Ties are broken toward the smallest vertex id throughout.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .decomp import FMapping, TreeDecomposition
from .errors import PreconditionError
from .graph import Edge, Graph, is_minimal_separator, norm_edge


@dataclass(frozen=True)
class VertexOrdering:
    order: Tuple[int, ...]
    kind: str = "given"

    def __iter__(self):
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)

    def reversed(self) -> "VertexOrdering":
        return VertexOrdering(self.order[::-1], self.kind)

    def positions(self) -> Dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


def lexbfs_order(g: Graph, start: Optional[int] = None) -> VertexOrdering:
    """Visit order of lexicographic breadth-first search."""
    n = g.n
    labels: Dict[int, List[int]] = {v: [] for v in g.vertices}
    if start is not None:
        if not g.has_vertex(start):
            raise PreconditionError(f"unknown start vertex {start}")
        labels[start] = [n + 1]
    left = set(g.vertices)
    order = []
    for i in range(n):
        v = max(left, key=lambda x: (labels[x], -x))
        left.remove(v)
        order.append(v)
        for w in g.adj(v):
            if w in left:
                labels[w].append(n - i)
    return VertexOrdering(tuple(order), "lexbfs")


def mcs_order(g: Graph) -> VertexOrdering:
    """Visit order of maximum cardinality search."""
    weight = {v: 0 for v in g.vertices}
    left = set(g.vertices)
    order = []
    while left:
        v = max(left, key=lambda x: (weight[x], -x))
        left.remove(v)
        order.append(v)
        for w in g.adj(v):
            if w in left:
                weight[w] += 1
    return VertexOrdering(tuple(order), "mcs")


# -------------------------------------------------------------- recognition

@dataclass(frozen=True)
class ChordalityResult:
    chordal: bool
    peo: Optional[Tuple[int, ...]] = None
    hole: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.chordal


def peo_violation(g: Graph, peo: Sequence[int]) -> Optional[Tuple[int, int, int]]:
    """First (v, p, w) with p, w later neighbors of v, p the earliest of them, and pw not an edge."""
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [u for u in g.adj(v) if pos[u] > pos[v]]
        if not later:
            continue
        p = min(later, key=pos.__getitem__)
        for w in sorted(later):
            if w != p and not g.has_edge(p, w):
                return v, p, w
    return None


def is_hole(g: Graph, cycle: Sequence[int]) -> bool:
    """``cycle`` lists the vertices of an induced cycle of length at least four, in order."""
    k = len(cycle)
    if k < 4 or len(set(cycle)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if g.has_edge(cycle[i], cycle[j]) != consecutive:
                return False
    return True


def _hole_through(g: Graph, v: int, a: int, b: int) -> Optional[Tuple[int, ...]]:
    """Shortest a-b path avoiding N[v] in its interior, closed through v."""
    blocked = (g.adj(v) | {v}) - {a, b}
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y in sorted(g.adj(x)):
            if y not in prev and y not in blocked:
                prev[y] = x
                queue.append(y)
    if b not in prev:
        return None
    path = []
    x = b
    while x is not None:
        path.append(x)
        x = prev[x]
    return (v,) + tuple(reversed(path))


def _canonical_cycle(cycle: Sequence[int]) -> Tuple[int, ...]:
    """Rotate to start at the smallest vertex, heading toward its smaller cycle neighbor."""
    i = cycle.index(min(cycle))
    rot = tuple(cycle[i:]) + tuple(cycle[:i])
    if rot[-1] < rot[1]:
        rot = (rot[0],) + tuple(reversed(rot[1:]))
    return rot


def find_hole(g: Graph, hint: Optional[Tuple[int, int, int]] = None) -> Optional[Tuple[int, ...]]:
    """A chordless cycle of length at least four, or None when G is chordal."""
    if hint is not None:
        hole = _hole_through(g, *hint)
        if hole is not None and is_hole(g, hole):
            return _canonical_cycle(hole)
    for v in g.vertices:
        nb = sorted(g.adj(v))
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                if not g.has_edge(a, b):
                    hole = _hole_through(g, v, a, b)
                    if hole is not None:
                        return _canonical_cycle(hole)
    return None


def is_chordal(g: Graph) -> ChordalityResult:
    """LexBFS plus perfect-elimination check; a hole certificate on failure."""
    peo = lexbfs_order(g).order[::-1]
    bad = peo_violation(g, peo)
    if bad is None:
        return ChordalityResult(True, peo=peo)
    hole = find_hole(g, bad)
    assert hole is not None and is_hole(g, hole), "non-chordal graph without a hole"
    return ChordalityResult(False, hole=hole)


# ------------------------------------------------------------------ moplexes

def true_twin_class(g: Graph, v: int) -> FrozenSet[int]:
    closed = g.adj(v) | {v}
    return frozenset(u for u in closed if g.adj(u) | {u} == closed)


def is_moplex(g: Graph, m: Iterable[int]) -> bool:
    """An inclusion-maximal clique module whose neighborhood is empty or a minimal separator."""
    mset = frozenset(m)
    if not mset or not g.is_clique(mset):
        return False
    v = min(mset)
    if true_twin_class(g, v) != mset:
        return False
    nb = g.neighborhood(mset)
    return not nb or is_minimal_separator(g, nb)


def moplex_partition(g: Graph, ordering: Optional[Sequence[int]] = None) -> Tuple[FrozenSet[int], ...]:
    """Perfect moplex partition following ``ordering`` (default: reversed LexBFS).

    Each step takes the true-twin class of the first remaining vertex of the
    ordering when it is a moplex of the remaining graph, and otherwise the
    moplex containing the earliest possible vertex.
    """
    if g.n and not g.is_connected():
        raise PreconditionError("moplex_partition needs a connected graph")
    if ordering is None:
        ordering = lexbfs_order(g).order[::-1]
    order = list(ordering)
    if sorted(order) != list(g.vertices):
        raise PreconditionError("ordering is not a permutation of the vertices")
    remaining = set(g.vertices)
    blocks = []
    while remaining:
        h = g.subgraph(remaining)
        block = None
        for v in order:
            if v in remaining:
                cand = true_twin_class(h, v)
                if is_moplex(h, cand):
                    block = cand
                    break
        assert block is not None, "every graph has a moplex"
        blocks.append(block)
        remaining -= block
    return tuple(blocks)


# --------------------------------------------------------------- clique trees

def _clique_tree_connected(g: Graph, fedges: Sequence[Edge]) -> Tuple[List[FrozenSet[int]], List[Tuple[int, int]], FMapping]:
    blocks = moplex_partition(g)
    k = len(blocks)
    which = {v: i for i, blk in enumerate(blocks) for v in blk}
    bags = []
    tree = []
    for i, blk in enumerate(blocks):
        later = {v for v in g.vertices if which[v] >= i}
        bags.append(frozenset(blk | (g.neighborhood(blk) & later)))
        if i < k - 1:
            j = min(which[u] for v in blk for u in g.adj(v) if which[u] > i)
            tree.append((i, j))
    fmap = {}
    for u, v in fedges:
        fmap[norm_edge(u, v)] = min(which[u], which[v])
    return bags, tree, fmap


def clique_tree_with_fmapping(g: Graph, fedges: Iterable[Sequence[int]] = ()) -> Tuple[TreeDecomposition, FMapping]:
    """Clique tree of a chordal graph (bags = maximal cliques) plus an F-mapping.

    Disconnected graphs get one tree per component, joined at their first nodes.
    """
    res = is_chordal(g)
    if not res:
        raise PreconditionError(f"graph is not chordal (hole {res.hole})")
    fedges = [norm_edge(*e) for e in fedges]
    for u, v in fedges:
        if not g.has_edge(u, v):
            raise PreconditionError(f"{u}{v} is not an edge")
    bags: List[FrozenSet[int]] = []
    tree: List[Tuple[int, int]] = []
    fmap: FMapping = {}
    comp_of = {}
    comps = g.components()
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    for ci, comp in enumerate(comps):
        sub = g.subgraph(comp)
        mine = [e for e in fedges if comp_of[e[0]] == ci]
        b, t, f = _clique_tree_connected(sub, mine)
        off = len(bags)
        if off:
            tree.append((0, off))
        bags += b
        tree += [(x + off, y + off) for x, y in t]
        fmap.update({e: x + off for e, x in f.items()})
    if not bags:
        bags = [frozenset()]
    return TreeDecomposition(tuple(bags), tuple(tree)), fmap


def maximal_cliques(g: Graph) -> List[FrozenSet[int]]:
    """Maximal cliques of a chordal graph."""
    td, _ = clique_tree_with_fmapping(g)
    return sorted((b for b in td.bags if b or g.n == 0), key=lambda c: sorted(c))


# ---------------------------------------------------------------------- LEX-M

def lexm_minimal_triangulation(g: Graph) -> List[Edge]:
    """Fill edges of the LEX-M minimal triangulation, sorted."""
    labels = {v: 0 for v in g.vertices}
    unnumbered = set(g.vertices)
    fill = []
    while unnumbered:
        v = max(unnumbered, key=lambda x: (labels[x], -x))
        unnumbered.remove(v)
        top = max(labels.values(), default=0)
        reach: List[List[int]] = [[] for _ in range(top + 1)]
        marked = {v}
        raised = []
        for w in sorted(g.adj(v)):
            if w in unnumbered:
                marked.add(w)
                reach[labels[w]].append(w)
                raised.append(w)
        for j in range(top + 1):
            while reach[j]:
                w = reach[j].pop()
                for z in sorted(g.adj(w)):
                    if z in unnumbered and z not in marked:
                        marked.add(z)
                        if labels[z] > j:
                            reach[labels[z]].append(z)
                            raised.append(z)
                            fill.append(norm_edge(v, z))
                        else:
                            reach[j].append(z)
        # raise by a half, then renormalize to consecutive integers
        doubled = {x: 2 * labels[x] for x in unnumbered}
        for x in raised:
            doubled[x] += 1
        ranks = {val: r for r, val in enumerate(sorted(set(doubled.values())))}
        labels = {x: ranks[doubled[x]] for x in unnumbered}
    return sorted(set(fill))


def triangulate(g: Graph) -> Tuple[Graph, List[Edge]]:
    fill = lexm_minimal_triangulation(g)
    return Graph(g.vertices, g.edges() + fill), fill
