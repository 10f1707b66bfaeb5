"""Named graph families used as fixtures, plus seeded random families."""
from __future__ import annotations

import random
from itertools import combinations

from .errors import PreconditionError
from .graph import Graph, is_k_connected


def complete(n: int) -> Graph:
    if n < 0:
        raise PreconditionError("complete: n must be >= 0")
    return Graph.from_edges(n, combinations(range(1, n + 1), 2))


def path(n: int) -> Graph:
    if n < 0:
        raise PreconditionError("path: n must be >= 0")
    return Graph.from_edges(n, ((i, i + 1) for i in range(1, n)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycle: n must be >= 3")
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def biclique(a: int, b: int) -> Graph:
    """K_{a,b}; side A is 1..a, side B is a+1..a+b."""
    if a < 1 or b < 1:
        raise PreconditionError("biclique: both sides must be nonempty")
    return Graph.from_edges(a + b, ((i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)))


def wheel(n: int) -> Graph:
    """W_n: the cycle 2..n+1 plus the universal vertex 1."""
    if n < 4:
        raise PreconditionError("wheel: n must be >= 4")
    rim = [(i, i + 1) for i in range(2, n + 1)] + [(2, n + 1)]
    return Graph.from_edges(n + 1, rim + [(1, i) for i in range(2, n + 2)])


def co_c6() -> Graph:
    return cycle(6).complement()


def k5_minus() -> Graph:
    return Graph.from_edges(5, [e for e in combinations(range(1, 6), 2) if e != (4, 5)])


def subdivided_complete(n: int) -> Graph:
    """K_n with every edge subdivided once; hubs are 1..n."""
    if n < 1:
        raise PreconditionError("subdivided_complete: n must be >= 1")
    return _multi_subdivided(n, 1)


def fq(q: int) -> Graph:
    """K_4 on hubs 1..4 with every edge replaced by q paths of length two."""
    if q < 1:
        raise PreconditionError("fq: q must be >= 1")
    return _multi_subdivided(4, q)


def _multi_subdivided(hubs: int, q: int) -> Graph:
    edges = []
    nxt = hubs + 1
    for i, j in combinations(range(1, hubs + 1), 2):
        for _ in range(q):
            edges += [(i, nxt), (nxt, j)]
            nxt += 1
    return Graph.from_edges(nxt - 1, edges)


def random_chordal(n: int, density: float = 0.5, seed: int = 0) -> Graph:
    """Random connected chordal graph grown by inserting simplicial vertices.

    Each new vertex is attached to a random subset of a random existing clique
    (a closed neighborhood recorded at insertion time), so it is simplicial
    when added.  ``density`` in [0, 1] scales the attached subset size.
    Labels are shuffled at the end.
    """
    if n < 1:
        raise PreconditionError("random_chordal: n must be >= 1")
    if not 0.0 <= density <= 1.0:
        raise PreconditionError("random_chordal: density must lie in [0, 1]")
    rng = random.Random(seed)
    cliques = [(1,)]
    edges = []
    for v in range(2, n + 1):
        base = rng.choice(cliques)
        size = max(1, min(len(base), round(density * len(base) + rng.random())))
        nbrs = rng.sample(base, size)
        edges += [(u, v) for u in nbrs]
        cliques.append(tuple(nbrs) + (v,))
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    relabel = {i + 1: perm[i] for i in range(n)}
    return Graph.from_edges(n, ((relabel[u], relabel[v]) for u, v in edges))


def random_gnp(n: int, p: float, seed: int = 0) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(n, (e for e in combinations(range(1, n + 1), 2) if rng.random() < p))


def random_kconnected(n: int, k: int, seed: int = 0, p: float = None, max_tries: int = 10000) -> Graph:
    """Rejection-sample G(n, p) until the result is k-connected."""
    if k < 1 or n < k + 1:
        raise PreconditionError("random_kconnected: need k >= 1 and n >= k + 1")
    if p is None:
        p = min(1.0, 0.5 + k / n)
    rng = random.Random(seed)
    for _ in range(max_tries):
        g = random_gnp(n, p, rng.randrange(1 << 30))
        if is_k_connected(g, k):
            return g
    raise PreconditionError(f"no {k}-connected sample after {max_tries} tries (n={n}, p={p})")


def random_ears(n: int, seed: int = 0, chord_prob: float = 0.2) -> Graph:
    """Random 2-connected graph from an ear decomposition.

    Sparse by design so that the SPQR tree has many S- and P-nodes.
    """
    if n < 3:
        raise PreconditionError("random_ears: n must be >= 3")
    rng = random.Random(seed)
    first = rng.randint(3, max(3, min(n, 6)))
    edges = {(i, i + 1) for i in range(1, first)} | {(1, first)}
    nxt = first + 1
    while nxt <= n:
        a, b = rng.sample(range(1, nxt), 2)
        inner = rng.randint(1, min(4, n - nxt + 1))
        chain = [a] + list(range(nxt, nxt + inner)) + [b]
        edges |= {tuple(sorted(p)) for p in zip(chain, chain[1:])}
        nxt += inner
        if rng.random() < chord_prob:
            u, v = rng.sample(range(1, nxt), 2)
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, edges)


def random_clique_sum(pieces, seed: int = 0, max_glue: int = 2, min_glue: int = 0) -> Graph:
    """Glue ``pieces`` one after another along a random clique of size <= max_glue.

    Each new piece shares between min_glue and max_glue (at most 2) vertices with the graph built so far; a shared
    pair is an edge on both sides, so every glue set is a clique cutset.
    Vertices are renumbered 1..n in order of first appearance.
    """
    rng = random.Random(seed)
    edges = set()
    n = 0
    for idx, piece in enumerate(pieces):
        if idx == 0:
            mapping = {v: i for i, v in enumerate(piece.vertices, 1)}
        else:
            sizes = [c for c in range(min_glue, max_glue + 1) if c <= 1 or (piece.m and edges)]
            size = rng.choice(sizes)
            if size == 2:
                host = rng.choice(sorted(edges))
                own = rng.choice(piece.edges())
            else:
                host = tuple(rng.sample(range(1, n + 1), size))
                own = tuple(rng.sample(piece.vertices, size))
            if size == 2 and rng.random() < 0.5:
                own = own[::-1]
            mapping = dict(zip(own, host))
            for v in piece.vertices:
                if v not in mapping:
                    n += 1
                    mapping[v] = n
        n = max(n, max(mapping.values(), default=0))
        edges |= {tuple(sorted((mapping[a], mapping[b]))) for a, b in piece.edges()}
    return Graph.from_edges(n, edges)


def random_block_cactus(blocks: int, seed: int = 0, max_size: int = 6) -> Graph:
    """Connected graph whose blocks are random cycles and complete graphs."""
    rng = random.Random(seed)
    pieces = [(cycle if rng.random() < 0.5 else complete)(rng.randint(3, max_size)) for _ in range(blocks)]
    return random_clique_sum(pieces, rng.randrange(1 << 30), max_glue=1, min_glue=1)


FAMILIES = {
    "complete": complete,
    "cycle": cycle,
    "path": path,
    "biclique": biclique,
    "wheel": wheel,
    "co_c6": co_c6,
    "k5_minus": k5_minus,
    "subdivided_complete": subdivided_complete,
    "fq": fq,
    "random_chordal": random_chordal,
    "random_kconnected": random_kconnected,
    "random_ears": random_ears,
    "random_block_cactus": random_block_cactus,
    "random_gnp": random_gnp,
}


def generate(family: str, *args, **kwargs) -> Graph:
    try:
        fn = FAMILIES[family]
    except KeyError:
        raise PreconditionError(f"unknown family {family!r}") from None
    return fn(*args, **kwargs)
