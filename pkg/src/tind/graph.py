"""Simple undirected graphs, the edge-list format, and elementary transformations.

Vertices are positive integers.  Graphs read from files or built by the
generators use the dense labels ``1..n``; subgraphs keep the labels of their
host so that bags computed on a piece can be reused on the whole graph.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import FormatError, PreconditionError

Edge = Tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph.

    >>> g = Graph.from_edges(3, [(1, 2), (2, 3)])
    >>> g.n, g.m, sorted(g.adj(2))
    (3, 2, [1, 3])
    """

    __slots__ = ("_adj", "_vertices", "_m", "_hash")

    def __init__(self, vertices: Iterable[int], edges: Iterable[Sequence[int]] = ()):
        adj: Dict[int, set] = {}
        for v in vertices:
            if not isinstance(v, int) or v < 1:
                raise PreconditionError(f"vertex identifiers must be positive integers, got {v!r}")
            adj[v] = set()
        m = 0
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            if u not in adj or v not in adj:
                raise PreconditionError(f"edge {u}-{v} uses an unknown vertex")
            if v in adj[u]:
                continue
            adj[u].add(v)
            adj[v].add(u)
            m += 1
        self._vertices = tuple(sorted(adj))
        self._adj = {v: frozenset(adj[v]) for v in self._vertices}
        self._m = m
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]] = ()) -> "Graph":
        return cls(range(1, n + 1), edges)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return self._m

    def adj(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def edges(self) -> List[Edge]:
        return [(u, v) for u in self._vertices for v in sorted(self._adj[u]) if u < v]

    def is_dense(self) -> bool:
        return self._vertices == tuple(range(1, self.n + 1))

    def subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph keeping the original labels."""
        keep = set(vertices)
        missing = keep.difference(self._adj)
        if missing:
            raise PreconditionError(f"unknown vertices {sorted(missing)}")
        return Graph(keep, ((u, v) for u in keep for v in self._adj[u] if v in keep and u < v))

    def without(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        return self.subgraph(v for v in self._vertices if v not in drop)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(vs[j] in self._adj[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return not any(vs[j] in self._adj[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def components(self, within: Optional[Iterable[int]] = None) -> List[FrozenSet[int]]:
        """Connected components of the subgraph induced by ``within`` (default: all)."""
        allowed = set(self._vertices if within is None else within)
        seen: set = set()
        comps = []
        for s in sorted(allowed):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if y in allowed and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def neighborhood(self, vertices: Iterable[int]) -> FrozenSet[int]:
        """Open neighborhood N(X) of a vertex set."""
        xs = set(vertices)
        out = set()
        for x in xs:
            out |= self._adj[x]
        return frozenset(out - xs)

    def complement(self) -> "Graph":
        vs = self._vertices
        return Graph(vs, ((u, v) for i, u in enumerate(vs) for v in vs[i + 1:] if v not in self._adj[u]))

    def relabel(self, mapping: Mapping[int, int]) -> "Graph":
        return Graph((mapping[v] for v in self._vertices), ((mapping[u], mapping[v]) for u, v in self.edges()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, tuple(self.edges())))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------- parsing

def _data_lines(text):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_graph(text) -> Graph:
    """Read the ``p <n> <m>`` / ``e <u> <v>`` edge-list format."""
    n = m = None
    edges = []
    seen = set()
    for lineno, tok in _data_lines(text):
        if tok[0] == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate header")
            if len(tok) != 3:
                raise FormatError(f"line {lineno}: malformed header")
            try:
                n, m = int(tok[1]), int(tok[2])
            except ValueError:
                raise FormatError(f"line {lineno}: malformed header") from None
            if n < 0 or m < 0:
                raise FormatError(f"line {lineno}: malformed header")
        elif tok[0] == "e":
            if n is None:
                raise FormatError(f"line {lineno}: edge before header")
            if len(tok) != 3:
                raise FormatError(f"line {lineno}: malformed edge line")
            try:
                u, v = int(tok[1]), int(tok[2])
            except ValueError:
                raise FormatError(f"line {lineno}: malformed edge line") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"line {lineno}: vertex id out of range")
            if u == v:
                raise FormatError(f"line {lineno}: self-loop at vertex {u}")
            e = norm_edge(u, v)
            if e in seen:
                raise FormatError(f"line {lineno}: duplicate edge {e[0]} {e[1]}")
            seen.add(e)
            edges.append(e)
        else:
            raise FormatError(f"line {lineno}: unknown line type {tok[0]!r}")
    if n is None:
        raise FormatError("missing header line")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph) -> str:
    if not g.is_dense():
        raise PreconditionError("only graphs on vertices 1..n can be serialized")
    lines = [f"p {g.n} {g.m}"]
    lines += [f"e {u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_weights(text, n: int) -> Dict[int, Fraction]:
    """One weight per line (decimal or ``a/b``); line i is vertex i."""
    weights = {}
    for lineno, tok in _data_lines(text):
        if len(tok) != 1:
            raise FormatError(f"line {lineno}: expected a single weight")
        try:
            w = Fraction(tok[0])
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"line {lineno}: bad weight {tok[0]!r}") from None
        if w < 0:
            raise FormatError(f"line {lineno}: negative weight")
        weights[len(weights) + 1] = w
    if len(weights) != n:
        raise FormatError(f"expected {n} weights, found {len(weights)}")
    return weights


def check_weights(g: Graph, weights: Mapping[int, Fraction]) -> None:
    for v in g.vertices:
        if v not in weights:
            raise PreconditionError(f"no weight for vertex {v}")
        if weights[v] < 0:
            raise PreconditionError(f"negative weight for vertex {v}")


# ---------------------------------------------------------- transformations

def contract_edge(g: Graph, u: int, v: int) -> Tuple[Graph, Dict[int, int]]:
    """Contract ``uv``; returns the dense-relabelled result and the origin map.

    The origin map sends every vertex of ``g`` to its vertex in the result;
    ``u`` and ``v`` share an image.
    """
    if not g.has_edge(u, v):
        raise PreconditionError(f"{u}{v} is not an edge")
    keep = min(u, v)
    origin = {}
    nxt = 1
    for x in g.vertices:
        if x in (u, v):
            if x == keep:
                origin[u] = origin[v] = nxt
                nxt += 1
        else:
            origin[x] = nxt
            nxt += 1
    edges = set()
    for a, b in g.edges():
        ia, ib = origin[a], origin[b]
        if ia != ib:
            edges.add(norm_edge(ia, ib))
    return Graph.from_edges(nxt - 1, edges), origin


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """Induced subgraph relabelled to ``1..|S|``; the map sends old labels to new."""
    keep = sorted(set(vertices))
    for x in keep:
        if not g.has_vertex(x):
            raise PreconditionError(f"unknown vertex {x}")
    mapping = {x: i for i, x in enumerate(keep, 1)}
    return g.subgraph(keep).relabel(mapping), mapping


def is_k_connected(g: Graph, k: int) -> bool:
    """Brute-force k-connectivity: at least k+1 vertices and no cutset below size k."""
    if g.n < k + 1:
        return False
    for size in range(k):
        for cut in combinations(g.vertices, size):
            if not g.without(cut).is_connected():
                return False
    return True


def full_components(g: Graph, sep: Iterable[int]) -> List[FrozenSet[int]]:
    """Components C of G - S with N(C) = S."""
    s = frozenset(sep)
    return [c for c in g.components(v for v in g.vertices if v not in s) if g.neighborhood(c) == s]


def is_minimal_separator(g: Graph, sep: Iterable[int]) -> bool:
    """S is a minimal separator iff G - S has at least two S-full components."""
    return len(full_components(g, sep)) >= 2
