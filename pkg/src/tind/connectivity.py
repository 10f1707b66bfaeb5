"""Block-cutpoint trees and SPQR trees.

The SPQR tree follows the variant without Q-nodes in which every tree edge
joins a P-node to an S- or R-node.  A skeleton edge is labelled virtual when
its endpoints are not adjacent in G.  Independently of that label, each edge
of G is owned by exactly one node (the skeleton or bond it was assigned to
while splitting), which is what the round-trip check rebuilds G from.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .errors import PreconditionError
from .graph import Edge, Graph, norm_edge


# ------------------------------------------------------------- blocks

def _biconnected(g: Graph) -> Tuple[List[FrozenSet[Edge]], Set[int]]:
    """Edge sets of the blocks with at least one edge, and the articulation points."""
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    blocks: List[FrozenSet[Edge]] = []
    cuts: Set[int] = set()
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack: List[Edge] = []
        children = 0
        it = [(root, None, iter(sorted(g.adj(root))))]
        while it:
            v, parent, nbrs = it[-1]
            advanced = False
            for w in nbrs:
                if w == parent:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(norm_edge(v, w))
                    it.append((w, v, iter(sorted(g.adj(w)))))
                    if v == root:
                        children += 1
                    advanced = True
                    break
                if index[w] < index[v]:
                    stack.append(norm_edge(v, w))
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            it.pop()
            if parent is None:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= index[parent]:
                if parent != root:
                    cuts.add(parent)
                block = []
                e = norm_edge(parent, v)
                while True:
                    f = stack.pop()
                    block.append(f)
                    if f == e:
                        break
                blocks.append(frozenset(block))
        if children >= 2:
            cuts.add(root)
    return blocks, cuts


def articulation_points(g: Graph) -> Set[int]:
    return _biconnected(g)[1]


def is_biconnected(g: Graph) -> bool:
    return g.n >= 3 and g.is_connected() and not articulation_points(g)


def is_triconnected(g: Graph) -> bool:
    if g.n < 4 or not is_biconnected(g):
        return False
    return all(not articulation_points(g.without([a])) for a in g.vertices)


@dataclass(frozen=True)
class BlockCutTree:
    blocks: Tuple[FrozenSet[int], ...]
    block_edges: Tuple[FrozenSet[Edge], ...]
    cut_vertices: FrozenSet[int]
    tree: Tuple[Tuple[int, int], ...]  # (block index, cut vertex)


def block_cutpoint_tree(g: Graph) -> BlockCutTree:
    """Blocks (by vertex set), cut vertices, and block/cut-vertex incidences of a connected graph."""
    if g.n == 0 or not g.is_connected():
        raise PreconditionError("block_cutpoint_tree needs a connected nonnull graph")
    edge_blocks, cuts = _biconnected(g)
    if not edge_blocks:
        return BlockCutTree((frozenset(g.vertices),), (frozenset(),), frozenset(), ())
    pairs = sorted(((frozenset(x for e in eb for x in e), eb) for eb in edge_blocks),
                   key=lambda p: (min(p[0]), sorted(p[0])))
    blocks = tuple(p[0] for p in pairs)
    tree = tuple((i, c) for i, b in enumerate(blocks) for c in sorted(b & cuts))
    return BlockCutTree(blocks, tuple(p[1] for p in pairs), frozenset(cuts), tree)


# -------------------------------------------------------------- SPQR trees

@dataclass(frozen=True)
class SpqrNode:
    kind: str  # "P", "S" or "R"
    vertices: FrozenSet[int]
    edges: Tuple[Edge, ...] = ()  # skeleton edges (S and R nodes)
    virtual: FrozenSet[Edge] = frozenset()
    cycle: Tuple[int, ...] = ()  # cyclic order (S nodes)
    owned: FrozenSet[Edge] = frozenset()  # edges of G assigned to this node

    def skeleton(self) -> Graph:
        return Graph(self.vertices, self.edges)

    def pair(self) -> Edge:
        u, v = sorted(self.vertices)
        return u, v


@dataclass(frozen=True)
class SpqrTree:
    nodes: Tuple[SpqrNode, ...]
    tree: Tuple[Tuple[int, int], ...]

    def neighbors(self, a: int) -> List[int]:
        return sorted([y for x, y in self.tree if x == a] + [x for x, y in self.tree if y == a])

    def of_kind(self, kind: str) -> List[int]:
        return [i for i, nd in enumerate(self.nodes) if nd.kind == kind]


class _Piece:
    """Split component under construction: pair -> ('real', None) or ('virtual', link id)."""

    __slots__ = ("edges",)

    def __init__(self, edges: Dict[Edge, Tuple[str, Optional[int]]]):
        self.edges = edges

    def graph(self) -> Graph:
        return Graph({x for e in self.edges for x in e}, self.edges)


def _cycle_order(g: Graph) -> Optional[Tuple[int, ...]]:
    """Cyclic order starting at the smallest vertex toward its smaller neighbor, if g is a cycle."""
    if g.n < 3 or g.m != g.n or any(g.degree(v) != 2 for v in g.vertices) or not g.is_connected():
        return None
    start = g.vertices[0]
    order = [start, min(g.adj(start))]
    while len(order) < g.n:
        a, b = sorted(g.adj(order[-1]))
        order.append(a if a != order[-2] else b)
    return tuple(order)


def _separation_pair(g: Graph) -> Optional[Edge]:
    for a in g.vertices:
        cuts = articulation_points(g.without([a]))
        if cuts:
            return norm_edge(a, min(cuts))
    return None


def spqr_tree(g: Graph) -> SpqrTree:
    """SPQR tree (triconnected components) by recursive 2-cutset splitting plus cycle merging."""
    if not is_biconnected(g):
        raise PreconditionError("spqr_tree needs a 2-connected graph with at least 3 vertices")
    links = itertools.count()
    todo = [_Piece({e: ("real", None) for e in g.edges()})]
    finals: List[Tuple[str, _Piece]] = []
    bonds: List[Tuple[Edge, Optional[Edge], List[int]]] = []  # pair, owned real edge, link ids
    while todo:
        piece = todo.pop()
        h = piece.graph()
        if _cycle_order(h) is not None:
            finals.append(("S", piece))
            continue
        sep = _separation_pair(h)
        if sep is None:
            finals.append(("R", piece))
            continue
        a, b = sep
        rest = [v for v in h.vertices if v not in sep]
        direct = piece.edges.get(sep)
        classes = h.components(rest)
        ids = []
        for comp in classes:
            lid = next(links)
            ids.append(lid)
            sub = {e: lab for e, lab in piece.edges.items() if e != sep and (e[0] in comp or e[1] in comp)}
            sub[sep] = ("virtual", lid)
            todo.append(_Piece(sub))
        bond_ids = list(ids)
        owned_real = None
        if direct is not None:
            if direct[0] == "real":
                owned_real = sep
            else:
                bond_ids.append(direct[1])
        if len(bond_ids) == 2 and owned_real is None:
            # two virtual edges and nothing else: pair them directly
            bonds.append((sep, None, bond_ids))
            continue
        bonds.append((sep, owned_real, bond_ids))

    # merge cycles that share a directly paired virtual edge
    direct_pairs = {tuple(sorted(ids)): pair for pair, real, ids in bonds if real is None and len(ids) == 2}
    merged = True
    while merged:
        merged = False
        for (x, y), pair in list(direct_pairs.items()):
            holder = {}
            for idx, (kind, piece) in enumerate(finals):
                for e, (lab, lid) in piece.edges.items():
                    if lab == "virtual" and lid in (x, y):
                        holder[lid] = idx
            i, j = holder[x], holder[y]
            if finals[i][0] == "S" and finals[j][0] == "S":
                edges = {e: lab for e, lab in finals[i][1].edges.items() if lab != ("virtual", x)}
                edges.update({e: lab for e, lab in finals[j][1].edges.items() if lab != ("virtual", y)})
                finals[i] = ("S", _Piece(edges))
                del finals[j]
                del direct_pairs[(x, y)]
                bonds = [bd for bd in bonds if sorted(bd[2]) != [x, y]]
                merged = True
                break

    gedges = set(g.edges())
    nodes: List[SpqrNode] = []
    where: Dict[int, int] = {}
    for kind, piece in finals:
        h = piece.graph()
        idx = len(nodes)
        for e, (lab, lid) in piece.edges.items():
            if lab == "virtual":
                where[lid] = idx
        virtual = frozenset(e for e in h.edges() if e not in gedges)
        owned = frozenset(e for e, (lab, _) in piece.edges.items() if lab == "real")
        nodes.append(SpqrNode(kind, frozenset(h.vertices), tuple(h.edges()), virtual,
                              _cycle_order(h) or (), owned))
    tree = []
    for pair, real, ids in sorted(bonds, key=lambda bd: bd[0]):
        p = len(nodes)
        nodes.append(SpqrNode("P", frozenset(pair), owned=frozenset([real]) if real else frozenset()))
        for lid in ids:
            tree.append((where[lid], p))
    order = sorted(range(len(nodes)), key=lambda i: ("RSP".index(nodes[i].kind), sorted(nodes[i].vertices)))
    renum = {old: new for new, old in enumerate(order)}
    return SpqrTree(tuple(nodes[i] for i in order), tuple(sorted(norm_edge(renum[x], renum[y]) for x, y in tree)))


# ----------------------------------------------------------- invariant check

@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""
    flag_only: bool = False


@dataclass(frozen=True)
class SpqrReport:
    checks: Tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok or c.flag_only for c in self.checks)

    def failed(self) -> List[Check]:
        return [c for c in self.checks if not c.ok and not c.flag_only]

    def flagged(self) -> List[Check]:
        return [c for c in self.checks if not c.ok and c.flag_only]


def check_spqr_invariants(s: SpqrTree, g: Graph) -> SpqrReport:
    checks: List[Check] = []

    def add(name, ok, detail="", flag_only=False):
        checks.append(Check(name, bool(ok), detail, flag_only))

    n, m = g.n, g.m
    k = len(s.nodes)
    gedges = set(g.edges())
    tree_ok = len(s.tree) == k - 1 and (k == 1 or Graph(range(1, k + 1), [(x + 1, y + 1) for x, y in s.tree]).is_connected())
    add("tree", tree_ok, f"{k} nodes, {len(s.tree)} edges")
    add("one P endpoint per tree edge",
        all((s.nodes[x].kind == "P") != (s.nodes[y].kind == "P") for x, y in s.tree))
    shapes = True
    for nd in s.nodes:
        if nd.kind == "S":
            shapes &= _cycle_order(nd.skeleton()) is not None
        elif nd.kind == "R":
            shapes &= is_triconnected(nd.skeleton())
        elif nd.kind == "P":
            shapes &= len(nd.vertices) == 2 and not g.without(nd.vertices).is_connected()
        else:
            shapes = False
    add("node shapes", shapes, "S cycles, R 3-connected, P 2-cutsets")
    adjacent_pairs = True
    virtual_ok = True
    for a, nd in enumerate(s.nodes):
        if nd.kind == "P":
            continue
        pairs = {s.nodes[b].pair() for b in s.neighbors(a)}
        sk = set(nd.edges)
        adjacent_pairs &= pairs <= sk
        virtual_ok &= nd.virtual == frozenset(e for e in sk if e not in gedges)
        virtual_ok &= nd.virtual <= pairs
    add("P pairs adjacent in neighbor skeletons", adjacent_pairs)
    add("virtual edges are non-edges backed by adjacent P-nodes", virtual_ok)
    ppairs = [nd.pair() for nd in s.nodes if nd.kind == "P"]
    add("distinct P-node pairs", len(ppairs) == len(set(ppairs)))
    normal = True
    for b in s.of_kind("P"):
        nb = s.neighbors(b)
        if len(nb) < 2:
            normal = False
        if (len(nb) == 2 and s.nodes[b].pair() not in gedges
                and all(s.nodes[a].kind == "S" for a in nb)):
            normal = False
    add("normal form (no mergeable cycles, no dangling P-nodes)", normal)
    rs = [nd for nd in s.nodes if nd.kind in "RS"]
    bag_sum = sum(len(nd.vertices) for nd in rs)
    r_sum = sum(len(nd.vertices) for nd in s.nodes if nd.kind == "R")
    e_sum = sum(len(nd.edges) for nd in rs)
    add("sum of R/S bags <= 3n-6", bag_sum <= 3 * n - 6, f"{bag_sum} <= {3 * n - 6}")
    add("sum of R bags <= 2n-4", r_sum <= 2 * n - 4, f"{r_sum} <= {2 * n - 4}")
    add("sum of R/S skeleton edges <= 3m-6", e_sum <= 3 * m - 6, f"{e_sum} <= {3 * m - 6}")
    add("node count <= 2n", k <= 2 * n, f"{k} <= {2 * n}", flag_only=True)
    owned = [e for nd in s.nodes for e in nd.owned]
    add("owned edges rebuild G exactly", sorted(owned) == sorted(gedges) and len(owned) == len(set(owned)))
    union_vertices = frozenset().union(*(nd.vertices for nd in s.nodes))
    real_union = {e for nd in rs for e in nd.edges if e not in nd.virtual}
    add("gluing skeletons and dropping virtual edges gives G",
        union_vertices == frozenset(g.vertices) and real_union == gedges)
    return SpqrReport(tuple(checks))


# ------------------------------------------------------------------- dumps

def format_spqr(s: SpqrTree) -> str:
    lines = []
    for i, nd in enumerate(s.nodes, 1):
        if nd.kind == "P":
            u, v = nd.pair()
            lines.append(f"P {i} {u} {v}")
        elif nd.kind == "S":
            lines.append(" ".join(["S", str(i)] + [str(x) for x in nd.cycle]))
        else:
            flags = [f"{u}-{v}:{'v' if (u, v) in nd.virtual else 'r'}" for u, v in nd.edges]
            lines.append(" ".join(["R", str(i)] + flags))
    lines += [f"T {x + 1} {y + 1}" for x, y in s.tree]
    return "\n".join(lines) + "\n"


def format_blocks(bc: BlockCutTree) -> str:
    lines = [" ".join(["B", str(i)] + [str(x) for x in sorted(b)]) for i, b in enumerate(bc.blocks, 1)]
    lines += [f"C {c}" for c in sorted(bc.cut_vertices)]
    lines += [f"T {i + 1} {c}" for i, c in bc.tree]
    return "\n".join(lines) + "\n"
