"""Exponential-time ground truth on small graphs.

Nothing here feeds the production decompositions.  The searches work on
bitmasks over a local vertex index; results are translated back to vertex
labels before they leave the module.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import OracleLimitError
from .graph import Graph, is_minimal_separator

DEFAULT_LIMIT = 30
PMC_LIMIT = 14


def oracle_limit() -> int:
    """Size cap for the oracles; ``TIND_ORACLE_LIMIT`` overrides the default."""
    raw = os.environ.get("TIND_ORACLE_LIMIT")
    return int(raw) if raw else DEFAULT_LIMIT


def _check_size(n: int, limit: Optional[int], what: str) -> None:
    cap = oracle_limit() if limit is None else limit
    if n > cap:
        raise OracleLimitError(f"{what}: {n} vertices exceed the oracle limit {cap}")


class _Bits:
    """Vertex <-> bit translation with adjacency masks."""

    __slots__ = ("verts", "index", "adj", "full")

    def __init__(self, g: Graph, within=None):
        self.verts = list(g.vertices if within is None else sorted(within))
        self.index = {v: i for i, v in enumerate(self.verts)}
        self.adj = []
        for v in self.verts:
            mask = 0
            for u in g.adj(v):
                i = self.index.get(u)
                if i is not None:
                    mask |= 1 << i
            self.adj.append(mask)
        self.full = (1 << len(self.verts)) - 1

    def twin_classes(self) -> List[int]:
        """Masks of the classes of false twins and of true twins with at least two members."""
        groups: Dict[Tuple[str, int], int] = {}
        for i, a in enumerate(self.adj):
            groups[("open", a)] = groups.get(("open", a), 0) | (1 << i)
            closed = a | (1 << i)
            groups[("closed", closed)] = groups.get(("closed", closed), 0) | (1 << i)
        return [m for m in groups.values() if m & (m - 1)]

    def mask(self, vertices) -> int:
        out = 0
        for v in vertices:
            out |= 1 << self.index[v]
        return out

    def members(self, mask: int) -> FrozenSet[int]:
        return frozenset(self.verts[i] for i in _bits(mask))

    def nbr(self, mask: int) -> int:
        """Closed-neighborhood mask of a set, minus the set itself."""
        out = 0
        for i in _bits(mask):
            out |= self.adj[i]
        return out & ~mask

    def component_of(self, start: int, allowed: int) -> int:
        comp = start
        frontier = start
        while frontier:
            grow = self.nbr(frontier) & allowed & ~comp
            comp |= grow
            frontier = grow
        return comp

    def components(self, allowed: int) -> List[int]:
        comps = []
        rest = allowed
        while rest:
            low = rest & -rest
            comp = self.component_of(low, allowed)
            comps.append(comp)
            rest &= ~comp
        return comps


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


# ------------------------------------------------------------ independence

def _max_independent(b: _Bits, cand: int, target: Optional[int] = None) -> int:
    """Mask of a maximum independent set inside ``cand`` (branch and bound).

    Stops early once a set of size ``target`` is found.
    """
    best = [0, 0]  # size, mask
    adj = b.adj

    def cover_bound(mask: int) -> int:
        # greedy clique cover: an independent set takes at most one vertex per clique
        cliques = []
        for i in _bits(mask):
            for k, cl in enumerate(cliques):
                if cl & ~adj[i] == 0:
                    cliques[k] = cl | (1 << i)
                    break
            else:
                cliques.append(1 << i)
        return len(cliques)

    def rec(cand: int, size: int, chosen: int) -> bool:
        # isolated vertices in cand are always taken
        iso = 0
        for i in _bits(cand):
            if adj[i] & cand == 0:
                iso |= 1 << i
        if iso:
            chosen |= iso
            size += _popcount(iso)
            cand &= ~iso
        if cand == 0:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return target is not None and best[0] >= target
        if size + cover_bound(cand) <= best[0]:
            return False
        # branch on a vertex of maximum degree inside cand
        v = max(_bits(cand), key=lambda i: (_popcount(adj[i] & cand), -i))
        bit = 1 << v
        if rec(cand & ~bit & ~adj[v], size + 1, chosen | bit):
            return True
        return rec(cand & ~bit, size, chosen)

    rec(cand, 0, 0)
    return best[1]


def alpha_exact(g: Graph, limit: Optional[int] = None) -> int:
    """Independence number by branch and bound with greedy clique-cover pruning."""
    _check_size(g.n, limit, "alpha_exact")
    b = _Bits(g)
    return _popcount(_max_independent(b, b.full))


def max_independent_set(g: Graph, within=None, target: Optional[int] = None) -> FrozenSet[int]:
    """A maximum independent set of ``g[within]``; with ``target``, any set of that size suffices."""
    b = _Bits(g, within)
    return b.members(_max_independent(b, b.full, target))


def find_independent_set(g: Graph, within, size: int) -> Optional[FrozenSet[int]]:
    """An independent set of exactly ``size`` vertices inside ``within``, or None."""
    found = max_independent_set(g, within, target=size)
    if len(found) < size:
        return None
    return frozenset(sorted(found)[:size])


# ---------------------------------------------------------------- MWIS

def tie_key(vertices, top: int) -> int:
    """Additive tie-break key: larger means 'contains the smaller vertex id first'.

    Two sets compare by the smallest vertex of their symmetric difference;
    the set containing it wins.  ``top`` is any bound on the vertex ids.
    """
    return sum(1 << (top - v) for v in vertices)


def mwis_bruteforce(g: Graph, weights: Mapping[int, Fraction], limit: Optional[int] = None
                    ) -> Tuple[FrozenSet[int], Fraction]:
    """Maximum-weight independent set by exhaustive branching.

    Among optimal sets, returns the one preferred by :func:`tie_key`.
    """
    _check_size(g.n, limit, "mwis_bruteforce")
    verts = list(g.vertices)
    top = verts[-1] if verts else 0
    w = [Fraction(weights[v]) for v in verts]
    key = [1 << (top - v) for v in verts]
    idx = {v: i for i, v in enumerate(verts)}
    later_adj = [[idx[u] for u in g.adj(v) if idx[u] > i] for i, v in enumerate(verts)]
    suffix = [Fraction(0)] * (len(verts) + 1)
    for i in range(len(verts) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + w[i]
    best = [Fraction(-1), -1, ()]
    blocked = [0] * len(verts)
    chosen: List[int] = []

    def rec(i: int, weight: Fraction, k: int) -> None:
        if weight + suffix[i] < best[0]:
            return
        if i == len(verts):
            if (weight, k) > (best[0], best[1]):
                best[0], best[1], best[2] = weight, k, tuple(chosen)
            return
        if not blocked[i]:
            for j in later_adj[i]:
                blocked[j] += 1
            chosen.append(verts[i])
            rec(i + 1, weight + w[i], k + key[i])
            chosen.pop()
            for j in later_adj[i]:
                blocked[j] -= 1
        rec(i + 1, weight, k)

    rec(0, Fraction(0), 0)
    return frozenset(best[2]), best[0]


# ------------------------------------------------------------ induced minors

@dataclass(frozen=True)
class InducedMinorModel:
    """Branch sets ``branch[h]`` in G for every vertex h of the pattern."""

    branch: Dict[int, FrozenSet[int]]

    def check(self, g: Graph, h: Graph) -> bool:
        sets = self.branch
        if set(sets) != set(h.vertices):
            return False
        used = set()
        for x in sets.values():
            if not x or used & x or len(g.components(x)) != 1:
                return False
            used |= x
        for a in h.vertices:
            for c in h.vertices:
                if a < c:
                    touching = bool(g.neighborhood(sets[a]) & sets[c])
                    if touching != h.has_edge(a, c):
                        return False
        return True


def _pattern_order(h: Graph) -> List[int]:
    """Highest-degree vertex last (it gets the component shortcut), the rest grown connectedly."""
    last = max(h.vertices, key=lambda x: (h.degree(x), -x))
    order: List[int] = []
    rest = set(h.vertices) - {last}
    while rest:
        v = max(rest, key=lambda x: (len(h.adj(x) & set(order)), h.degree(x), -x))
        order.append(v)
        rest.remove(v)
    return order + [last]


def _connected_sets(b: _Bits, allowed: int, roots: int, cap: int,
                    earlier: Optional[List[int]] = None) -> Iterator[int]:
    """Connected subsets of ``allowed`` meeting ``roots``, each yielded once, size <= cap.

    ``earlier[v]`` is a mask of vertices that must already be in the set (or
    be unavailable) before ``v`` may join; used to break twin symmetry.
    """
    adj = b.adj
    excluded = 0

    def grow(cur: int, ext: int, excl: int, size: int) -> Iterator[int]:
        yield cur
        if size >= cap:
            return
        while ext:
            low = ext & -ext
            ext ^= low
            v = low.bit_length() - 1
            if earlier is not None and earlier[v] & excl:
                excl |= low
                continue
            new_ext = (ext | adj[v]) & allowed & ~cur & ~low & ~excl
            yield from grow(cur | low, new_ext, excl, size + 1)
            excl |= low

    for r in _bits(roots & allowed):
        low = 1 << r
        if earlier is not None and earlier[r] & excluded:
            excluded |= low
            continue
        yield from grow(low, adj[r] & allowed & ~excluded & ~low, excluded | low, 1)
        excluded |= low


def _is_prefix(used: int, avail: int) -> bool:
    """``used`` consists of the lowest members of ``avail``."""
    if not used:
        return True
    below = (1 << used.bit_length()) - 1
    return avail & below == used


def find_induced_minor_model(g: Graph, h: Graph, limit: Optional[int] = None
                             ) -> Optional[InducedMinorModel]:
    """An induced minor model of ``h`` in ``g``, or None if there is none.

    Branch sets are placed one pattern vertex at a time, each a connected set
    avoiding the neighborhoods of already placed non-neighbors and touching
    every already placed neighbor.  The highest-degree pattern vertex goes
    last: for it, a whole component of the remaining region is enough.
    Twins of G are used in index order, which removes symmetric branches.
    """
    _check_size(g.n, limit, "find_induced_minor_model")
    if h.n > 6:
        raise OracleLimitError("find_induced_minor_model: pattern has more than 6 vertices")
    if h.n == 0:
        return InducedMinorModel({})
    if h.n > g.n or h.m > g.m:
        return None
    b = _Bits(g)
    order = _pattern_order(h)
    pos = {u: i for i, u in enumerate(order)}
    # twins are interchangeable, so each branch set takes a prefix of the free members of a class
    twins = b.twin_classes()
    placed: List[int] = [0] * len(order)
    reach: List[int] = [0] * len(order)  # neighborhoods of placed branch sets
    nbrs_before = [[pos[w] for w in h.adj(u) if pos[w] < i] for i, u in enumerate(order)]
    non_before = [[j for j in range(i) if j not in set(nbrs_before[i])] for i in range(len(order))]

    def region(i: int, free: int) -> int:
        forbid = 0
        for j in non_before[i]:
            forbid |= reach[j]
        return free & ~forbid

    def last_component(t: int, free: int) -> int:
        """A component of t's region meeting the neighborhood of every placed H-neighbor."""
        r = region(t, free)
        needs = [reach[j] & r for j in nbrs_before[t]]
        if not all(needs):
            return 0
        if not needs:
            return b.component_of(r & -r, r) if r else 0
        for comp in b.components(r):
            if all(comp & need for need in needs):
                return comp
        return 0

    def feasible(i: int, free: int) -> bool:
        for t in range(i, len(order)):
            r = region(t, free)
            if not r:
                return False
            for j in nbrs_before[t]:
                if j < i and not reach[j] & r:
                    return False
        return True

    def rec(i: int, free: int) -> bool:
        if i == len(order):
            return True
        if i == len(order) - 1:
            # the last branch set can be a whole component of its region
            comp = last_component(i, free)
            if comp:
                placed[i] = comp
                return True
            return False
        r = region(i, free)
        cap = _popcount(free) - (len(order) - i - 1)
        if nbrs_before[i]:
            touch = [reach[j] & r for j in nbrs_before[i]]
            if not all(touch):
                return False
            roots = min(touch, key=_popcount)
        else:
            roots = r
        earlier = [0] * len(b.verts)
        for cls in twins:
            avail = cls & free
            prior = 0
            for v in _bits(avail):
                earlier[v] = prior
                prior |= 1 << v
        for s in _connected_sets(b, r, roots, cap, earlier):
            if any(not s & reach[j] for j in nbrs_before[i]):
                continue
            if not all(_is_prefix(s & cls, cls & free) for cls in twins):
                continue
            placed[i] = s
            reach[i] = b.nbr(s)
            nfree = free & ~s
            if feasible(i + 1, nfree) and rec(i + 1, nfree):
                return True
        placed[i] = reach[i] = 0
        return False

    if not rec(0, b.full):
        return None
    return InducedMinorModel({u: b.members(placed[pos[u]]) for u in order})


def has_induced_minor(g: Graph, h: Graph, limit: Optional[int] = None) -> bool:
    return find_induced_minor_model(g, h, limit) is not None


# ----------------------------------------------- separators and PMCs

def enumerate_minimal_separators(g: Graph, limit: Optional[int] = None) -> List[FrozenSet[int]]:
    """All minimal separators, sorted by size then members.

    Seeds are the neighborhoods N(C) of components C of G - N[v]; the list is
    closed under the step S -> N(C) for components C of G - (S u N(x)), x in S.
    The empty set is listed for disconnected graphs.
    """
    _check_size(g.n, limit, "enumerate_minimal_separators")
    b = _Bits(g)
    found = set()
    queue = []

    def add_from(removed: int) -> None:
        for comp in b.components(b.full & ~removed):
            sep = b.nbr(comp)
            if sep and sep not in found:
                found.add(sep)
                queue.append(sep)

    for i in range(len(b.verts)):
        add_from(b.adj[i] | (1 << i))
    while queue:
        sep = queue.pop()
        for x in _bits(sep):
            add_from(sep | b.adj[x])
    result = [b.members(s) for s in found]
    if len(g.components()) > 1:
        result.append(frozenset())
    for s in result:
        assert is_minimal_separator(g, s), f"not a minimal separator: {sorted(s)}"
    return sorted(result, key=lambda s: (len(s), sorted(s)))


def mms(g: Graph, limit: Optional[int] = None) -> int:
    """Largest minimal separator size; 0 when there is none (e.g. complete graphs)."""
    return max((len(s) for s in enumerate_minimal_separators(g, limit)), default=0)


def is_pmc(g: Graph, x) -> bool:
    """Both potential-maximal-clique conditions for X."""
    return _is_pmc_mask(_Bits(g), _Bits(g).mask(x))


def _is_pmc_mask(b: _Bits, x: int) -> bool:
    if x == 0:
        return b.full == 0
    comps = b.components(b.full & ~x)
    nbrs = [b.nbr(c) for c in comps]
    for nb in nbrs:
        if nb == x:
            return False
    xs = list(_bits(x))
    for a_pos, a in enumerate(xs):
        for c in xs[a_pos + 1:]:
            if b.adj[a] >> c & 1:
                continue
            pair = (1 << a) | (1 << c)
            if not any(nb & pair == pair for nb in nbrs):
                return False
    return True


def enumerate_pmcs(g: Graph, limit: Optional[int] = None) -> List[FrozenSet[int]]:
    """All potential maximal cliques by subset enumeration (n <= 14)."""
    _check_size(g.n, PMC_LIMIT if limit is None else limit, "enumerate_pmcs")
    b = _Bits(g)
    out = [b.members(x) for x in range(1, b.full + 1) if _is_pmc_mask(b, x)]
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def alpha_pmc(g: Graph, limit: Optional[int] = None) -> int:
    return max((alpha_exact(g.subgraph(x)) for x in enumerate_pmcs(g, limit)), default=0)
