"""Tree decompositions, refined decompositions, and the operations composed on them.

Nodes are numbered ``0..N-1``; ``bags[t]`` is the bag of node ``t`` and
``tree`` lists the tree edges.  A refined decomposition additionally carries
``refinement[t]`` (a subset of the bag) and the budget ``ell``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import FormatError, PreconditionError
from .graph import Edge, Graph, _data_lines, contract_edge, norm_edge
from .oracles import alpha_exact

FMapping = Dict[Edge, int]


@dataclass(frozen=True)
class TreeDecomposition:
    bags: Tuple[FrozenSet[int], ...]
    tree: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(self, "tree", tuple(sorted(norm_edge(a, b) for a, b in self.tree)))

    @property
    def size(self) -> int:
        return len(self.bags)

    def neighbors(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in self.bags]
        for a, b in self.tree:
            out[a].append(b)
            out[b].append(a)
        return out

    def max_bag_size(self) -> int:
        return max((len(b) for b in self.bags), default=0)

    def vertices(self) -> FrozenSet[int]:
        return frozenset().union(*self.bags) if self.bags else frozenset()

    @property
    def ell(self) -> int:
        return 0

    @property
    def refinement(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(frozenset() for _ in self.bags)

    def refined(self, refinement: Sequence[Iterable[int]], ell: int) -> "RefinedTreeDecomposition":
        return RefinedTreeDecomposition(self.bags, self.tree, tuple(frozenset(u) for u in refinement), ell)


@dataclass(frozen=True)
class RefinedTreeDecomposition(TreeDecomposition):
    _refinement: Tuple[FrozenSet[int], ...] = ()
    _ell: int = 0

    def __post_init__(self):
        super().__post_init__()
        ref = tuple(frozenset(u) for u in self._refinement)
        if not ref:
            ref = tuple(frozenset() for _ in self.bags)
        if len(ref) != len(self.bags):
            raise PreconditionError("refinement must give one set per node")
        object.__setattr__(self, "_refinement", ref)

    @property
    def ell(self) -> int:
        return self._ell

    @property
    def refinement(self) -> Tuple[FrozenSet[int], ...]:
        return self._refinement

    @property
    def base(self) -> TreeDecomposition:
        return TreeDecomposition(self.bags, self.tree)


def as_refined(d: TreeDecomposition) -> RefinedTreeDecomposition:
    if isinstance(d, RefinedTreeDecomposition):
        return d
    return d.refined((), 0)


def strip_refinement(d: TreeDecomposition) -> TreeDecomposition:
    return TreeDecomposition(d.bags, d.tree)


# ------------------------------------------------------------- validation

@dataclass(frozen=True)
class Validation:
    ok: bool
    axiom: str = ""
    witness: Tuple = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _violation(axiom: str, witness, message: str) -> Validation:
    return Validation(False, axiom, tuple(witness), message)


def _tree_problem(nodes: int, tree) -> Optional[Validation]:
    if nodes == 0:
        return _violation("tree", (), "decomposition has no nodes")
    adj: List[List[int]] = [[] for _ in range(nodes)]
    seen_edges = set()
    for a, b in tree:
        if not (0 <= a < nodes and 0 <= b < nodes) or a == b:
            return _violation("tree", (a, b), f"bad tree edge {a}-{b}")
        if (a, b) in seen_edges:
            return _violation("tree", (a, b), f"repeated tree edge {a}-{b}")
        seen_edges.add((a, b))
        adj[a].append(b)
        adj[b].append(a)
    if len(seen_edges) != nodes - 1:
        return _violation("tree", (), f"{len(seen_edges)} edges on {nodes} nodes is not a tree")
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != nodes:
        missing = min(set(range(nodes)) - seen)
        return _violation("tree", (missing,), f"tree is disconnected at node {missing}")
    return None


def validate(g: Graph, d: TreeDecomposition) -> Validation:
    """Check the tree-decomposition axioms, plus the refinement ones for refined input.

    The first violation in a fixed order (tree, bag vertices, vertex cover,
    edge cover, connectivity, refinement) is reported with a witness.
    """
    bad = _tree_problem(d.size, d.tree)
    if bad is not None:
        return bad
    for t, bag in enumerate(d.bags):
        for v in sorted(bag):
            if not g.has_vertex(v):
                return _violation("bags", (t, v), f"bag {t} holds unknown vertex {v}")
    occurs: Dict[int, List[int]] = {v: [] for v in g.vertices}
    for t, bag in enumerate(d.bags):
        for v in bag:
            occurs[v].append(t)
    for v in g.vertices:
        if not occurs[v]:
            return _violation("vertex", (v,), f"vertex {v} is in no bag")
    for u, v in g.edges():
        if not any(v in d.bags[t] for t in occurs[u]):
            return _violation("edge", (u, v), f"edge {u}{v} is uncovered")
    nbrs = d.neighbors()
    for v in g.vertices:
        nodes = set(occurs[v])
        start = occurs[v][0]
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in nbrs[x]:
                if y in nodes and y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != len(nodes):
            return _violation("connectivity", (v,), f"occurrences of vertex {v} are disconnected")
    if isinstance(d, RefinedTreeDecomposition):
        for t, (bag, u) in enumerate(zip(d.bags, d.refinement)):
            if not u <= bag:
                return _violation("refinement", (t,), f"U of node {t} is not inside its bag")
            if len(u) > d.ell:
                return _violation("refinement", (t,), f"U of node {t} has {len(u)} > {d.ell} vertices")
    return Validation(True)


def require_valid(g: Graph, d: TreeDecomposition, what: str = "decomposition") -> None:
    res = validate(g, d)
    if not res:
        raise PreconditionError(f"invalid {what}: {res.message}")


# ---------------------------------------------------------------- measures

def _alpha_of(g: Graph, vertices, cache: Dict[FrozenSet[int], int]) -> int:
    key = frozenset(vertices)
    if key not in cache:
        cache[key] = alpha_exact(g.subgraph(key))
    return cache[key]


def independence_number(g: Graph, d: TreeDecomposition) -> int:
    """Largest independence number of a bag."""
    cache: Dict[FrozenSet[int], int] = {}
    return max((_alpha_of(g, bag, cache) for bag in d.bags), default=0)


def residual_independence_number(g: Graph, d: TreeDecomposition) -> int:
    """Largest independence number of a bag once its refinement set is removed."""
    cache: Dict[FrozenSet[int], int] = {}
    return max((_alpha_of(g, bag - u, cache) for bag, u in zip(d.bags, d.refinement)), default=0)


@dataclass(frozen=True)
class DecompositionReport:
    node_count: int
    max_bag_size: int
    independence_number: int
    residual_independence_number: int
    ell: int

    def consistent(self) -> bool:
        r, a = self.residual_independence_number, self.independence_number
        return r <= a <= r + self.ell


def report(g: Graph, d: TreeDecomposition) -> DecompositionReport:
    return DecompositionReport(
        node_count=d.size,
        max_bag_size=d.max_bag_size(),
        independence_number=independence_number(g, d),
        residual_independence_number=residual_independence_number(g, d),
        ell=d.ell,
    )


# ------------------------------------------------------------ F-mappings

def derive_fmapping(d: TreeDecomposition, edges: Iterable[Sequence[int]]) -> FMapping:
    """Send every edge to the first node whose bag holds both endpoints."""
    out: FMapping = {}
    for u, v in edges:
        e = norm_edge(u, v)
        for t, bag in enumerate(d.bags):
            if u in bag and v in bag:
                out[e] = t
                break
        else:
            raise PreconditionError(f"no bag covers edge {e[0]}{e[1]}")
    return out


def check_fmapping(d: TreeDecomposition, fmap: Mapping[Edge, int], edges=None) -> bool:
    if edges is not None and {norm_edge(*e) for e in edges} != set(fmap):
        return False
    return all(0 <= t < d.size and set(e) <= d.bags[t] for e, t in fmap.items())


def is_fstar_covering(d: TreeDecomposition, fstar: Iterable[Sequence[int]]) -> bool:
    """Every F*-edge inside a bag has an endpoint in that node's refinement set."""
    edges = [norm_edge(*e) for e in fstar]
    for bag, u in zip(d.bags, d.refinement):
        for a, b in edges:
            if a in bag and b in bag and a not in u and b not in u:
                return False
    return True


# -------------------------------------------------------------- operations

def glue_on_clique_cutset(g: Graph, a: Iterable[int], b: Iterable[int], c: Iterable[int],
                          da: TreeDecomposition, db: TreeDecomposition,
                          check: bool = True) -> RefinedTreeDecomposition:
    """Join decompositions of ``G[A u C]`` and ``G[B u C]`` through a connector node with bag C.

    Node ids of ``da`` are kept; those of ``db`` are shifted by ``da.size``;
    the connector is the last node and has an empty refinement set.
    """
    A, B, C = frozenset(a), frozenset(b), frozenset(c)
    if A & B or A & C or B & C or (A | B | C) != frozenset(g.vertices):
        raise PreconditionError("(A, B, C) is not a partition of the vertex set")
    if not A or not B:
        raise PreconditionError("both sides of a cut-partition must be nonempty")
    if any(g.adj(x) & B for x in A):
        raise PreconditionError("C does not separate A from B")
    if not g.is_clique(C):
        raise PreconditionError("C is not a clique")
    if check:
        require_valid(g.subgraph(A | C), da, "decomposition of G[A u C]")
        require_valid(g.subgraph(B | C), db, "decomposition of G[B u C]")
    ta = next((t for t, bag in enumerate(da.bags) if C <= bag), None)
    tb = next((t for t, bag in enumerate(db.bags) if C <= bag), None)
    if ta is None or tb is None:
        raise PreconditionError("internal inconsistency: no bag contains the clique cutset")
    shift = da.size
    conn = shift + db.size
    bags = da.bags + db.bags + (C,)
    refinement = da.refinement + db.refinement + (frozenset(),)
    tree = da.tree + tuple((x + shift, y + shift) for x, y in db.tree) + ((ta, conn), (tb + shift, conn))
    return RefinedTreeDecomposition(bags, tree, refinement, max(da.ell, db.ell))


def project_contraction(g: Graph, d: TreeDecomposition, u: int, v: int) -> TreeDecomposition:
    """Decomposition of ``contract_edge(g, u, v)``: rename u and v to the merged vertex in every bag."""
    if not g.has_edge(u, v):
        raise PreconditionError(f"{u}{v} is not an edge")
    _, origin = contract_edge(g, u, v)
    bags = [frozenset(origin[x] for x in bag) for bag in d.bags]
    if isinstance(d, RefinedTreeDecomposition):
        ref = [frozenset(origin[x] for x in s) for s in d.refinement]
        return RefinedTreeDecomposition(bags, d.tree, ref, d.ell)
    return TreeDecomposition(bags, d.tree)


def relabel(d: TreeDecomposition, mapping: Mapping[int, int]) -> TreeDecomposition:
    bags = [frozenset(mapping[x] for x in bag) for bag in d.bags]
    if isinstance(d, RefinedTreeDecomposition):
        return RefinedTreeDecomposition(bags, d.tree, [frozenset(mapping[x] for x in s) for s in d.refinement], d.ell)
    return TreeDecomposition(bags, d.tree)


def single_bag(vertices: Iterable[int], refinement: Iterable[int] = (), ell: int = 0) -> RefinedTreeDecomposition:
    return RefinedTreeDecomposition((frozenset(vertices),), (), (frozenset(refinement),), ell)


# ------------------------------------------------------------- file format

def format_decomposition(d: TreeDecomposition, n: int) -> str:
    """The ``s td`` text form; nodes are written as ``1..N``."""
    lines = [f"s td {d.size} {d.max_bag_size()} {n}"]
    refined = isinstance(d, RefinedTreeDecomposition)
    if refined:
        lines.append(f"c ell {d.ell}")
    for t, bag in enumerate(d.bags, 1):
        lines.append(" ".join(["b", str(t)] + [str(x) for x in sorted(bag)]))
    if refined:
        for t, u in enumerate(d.refinement, 1):
            if u:
                lines.append(" ".join(["u", str(t)] + [str(x) for x in sorted(u)]))
    for a, b in d.tree:
        lines.append(f"t {a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def parse_decomposition(text) -> TreeDecomposition:
    """Read the ``s td`` format.  ``u`` lines or a ``c ell`` line make the result refined."""
    header = None
    ell = None
    bags: Dict[int, FrozenSet[int]] = {}
    refine: Dict[int, FrozenSet[int]] = {}
    tree = []

    def ints(tok, lineno):
        try:
            return [int(x) for x in tok]
        except ValueError:
            raise FormatError(f"line {lineno}: expected integers") from None

    for lineno, tok in _data_lines(text):
        kind = tok[0]
        if kind == "c":
            if len(tok) == 3 and tok[1] == "ell":
                ell = ints(tok[2:], lineno)[0]
            continue
        if kind == "s":
            if header is not None:
                raise FormatError(f"line {lineno}: duplicate header")
            if len(tok) != 5 or tok[1] != "td":
                raise FormatError(f"line {lineno}: malformed header")
            header = ints(tok[2:], lineno)
            continue
        if header is None:
            raise FormatError(f"line {lineno}: data before header")
        nodes, width, n = header
        if kind in ("b", "u"):
            if len(tok) < 2:
                raise FormatError(f"line {lineno}: missing node id")
            vals = ints(tok[1:], lineno)
            t, members = vals[0], vals[1:]
            if not 1 <= t <= nodes:
                raise FormatError(f"line {lineno}: node id {t} out of range")
            if any(not 1 <= x <= n for x in members):
                raise FormatError(f"line {lineno}: vertex id out of range")
            if len(set(members)) != len(members):
                raise FormatError(f"line {lineno}: repeated vertex")
            target = bags if kind == "b" else refine
            if t in target:
                raise FormatError(f"line {lineno}: node {t} listed twice")
            target[t] = frozenset(members)
        elif kind == "t" or kind.isdigit():
            # bare "a b" lines are plain PACE tree edges
            vals = ints(tok[1:] if kind == "t" else tok, lineno)
            if len(vals) != 2 or not all(1 <= x <= nodes for x in vals):
                raise FormatError(f"line {lineno}: malformed tree edge")
            tree.append((vals[0] - 1, vals[1] - 1))
        else:
            raise FormatError(f"line {lineno}: unknown line type {kind!r}")
    if header is None:
        raise FormatError("missing header line")
    nodes, width, n = header
    if len(bags) != nodes:
        raise FormatError(f"header announces {nodes} bags, found {len(bags)}")
    if max((len(b) for b in bags.values()), default=0) != width:
        raise FormatError("header bag width does not match the bags")
    for t in refine:
        if t not in bags:
            raise FormatError(f"refinement for unknown node {t}")
    ordered = tuple(bags[t] for t in range(1, nodes + 1))
    if ell is None and not refine:
        return TreeDecomposition(ordered, tuple(tree))
    ref = tuple(refine.get(t, frozenset()) for t in range(1, nodes + 1))
    if ell is None:
        ell = max(len(u) for u in ref)
    return RefinedTreeDecomposition(ordered, tuple(tree), ref, ell)


def header_vertex_count(text) -> int:
    for _, tok in _data_lines(text):
        if tok[0] == "s" and len(tok) == 5:
            return int(tok[4])
    raise FormatError("missing header line")
