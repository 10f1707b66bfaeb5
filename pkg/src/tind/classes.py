"""Class pipelines: chordal, W4-induced-minor-free, K5-minus-induced-minor-free,
and K_{2,q}-induced-minor-free graphs, each with an optional robust mode.

Every pipeline returns a ``ClassCertificate``.  A NOT_IN_CLASS verdict carries
evidence that ``ClassCertificate.check`` re-verifies against the input graph.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Optional, Tuple

from .chordal import clique_tree_with_fmapping, is_chordal, is_hole, triangulate
from .connectivity import is_triconnected
from .decomp import FMapping, RefinedTreeDecomposition, TreeDecomposition, derive_fmapping, validate
from .errors import PreconditionError
from .framework import (Rejected, Rejection, SolverOutput, TriconnectedInstance, TriconnectedSolver,
                        cycle_order, decompose_general)
from .graph import Graph
from .oracles import alpha_exact, find_independent_set

IN_CLASS = "IN_CLASS"
NOT_IN_CLASS = "NOT_IN_CLASS"


@dataclass(frozen=True)
class ClassCertificate:
    verdict: str
    decomposition: Optional[TreeDecomposition] = None
    reason: str = ""
    kind: str = ""
    witness: Tuple[int, ...] = ()
    bag: FrozenSet[int] = frozenset()
    skeleton: Optional[Graph] = None
    bag_alpha: Tuple[int, ...] = ()

    @property
    def in_class(self) -> bool:
        return self.verdict == IN_CLASS

    def check(self, g: Graph) -> bool:
        """Re-verify the evidence: a valid decomposition, or a checkable rejection witness."""
        if self.in_class:
            return self.decomposition is not None and bool(validate(g, self.decomposition))
        if self.kind == "independent_set":
            w = frozenset(self.witness)
            return len(w) == len(self.witness) and w <= self.bag and g.is_independent(w)
        if self.kind == "hole":
            return self.skeleton is not None and is_hole(self.skeleton, self.witness)
        if self.kind in ("disjoint_fstar", "uncovered_fstar"):
            return self.skeleton is not None and all(self.skeleton.has_edge(*e) and not g.has_edge(*e)
                                                     for e in zip(self.witness[::2], self.witness[1::2]))
        if self.kind == "shape":
            return self.skeleton is not None and is_triconnected(self.skeleton) \
                and classify_triconnected_k5m(self.skeleton).tag == "NotRecognized"
        return False


def _accept(d: TreeDecomposition, **kw) -> ClassCertificate:
    return ClassCertificate(IN_CLASS, d, **kw)


def _reject(r: Rejection) -> ClassCertificate:
    return ClassCertificate(NOT_IN_CLASS, None, r.reason, r.kind, r.witness, r.bag, r.skeleton)


def _smallest(bag, count: int) -> FrozenSet[int]:
    return frozenset(sorted(bag)[:count])


def _scan_bags(host: Graph, bags, size: int) -> Optional[Rejection]:
    for bag in bags:
        if len(bag) >= size:
            found = find_independent_set(host, bag, size)
            if found is not None:
                return Rejection(f"independent set of size {size} in bag {sorted(bag)}: {sorted(found)}",
                                 witness=tuple(sorted(found)), kind="independent_set", bag=frozenset(bag))
    return None


# -------------------------------------------------------------------- chordal

def decompose_chordal(g: Graph) -> ClassCertificate:
    """Clique tree (independence number 1) or a hole."""
    res = is_chordal(g)
    if not res:
        return ClassCertificate(NOT_IN_CLASS, None, f"hole {list(res.hole)}", "hole", res.hole, skeleton=g)
    d, _ = clique_tree_with_fmapping(g)
    return _accept(d)


# ------------------------------------------------------------------------- W4

def w4_triconnected_solver(inst: TriconnectedInstance, host: Optional[Graph] = None) -> SolverOutput:
    """Clique tree of a chordal 3-connected skeleton with F*-covering sets of size <= 3.

    With ``host`` given, bags are also scanned for independent sets of size 5 in the host.
    """
    g = inst.graph
    if not is_triconnected(g):
        raise PreconditionError("w4 solver needs a 3-connected graph")
    res = is_chordal(g)
    if not res:
        return Rejection(f"R-node skeleton not chordal: hole {list(res.hole)}", g, res.hole, "hole")
    td, fmap = clique_tree_with_fmapping(g, inst.f)
    fstar = sorted(inst.fstar)
    refinement = []
    for bag in td.bags:
        if len(bag) <= 4:
            refinement.append(_smallest(bag, min(len(bag), 3)))
            continue
        inside = [e for e in fstar if e[0] in bag and e[1] in bag]
        for e, f in combinations(inside, 2):
            if not set(e) & set(f):
                return Rejection(f"two disjoint F*-edges {e} and {f} in a clique bag of size {len(bag)}",
                                 g, e + f, "disjoint_fstar", bag)
        refinement.append(frozenset(inside[0]) if inside else frozenset())
    if host is not None:
        bad = _scan_bags(host, td.bags, 5)
        if bad is not None:
            return bad
    return td.refined(refinement, 3), fmap


def w4_solver(host: Optional[Graph] = None) -> TriconnectedSolver:
    return TriconnectedSolver(1, 3, lambda inst: w4_triconnected_solver(inst, host), "w4")


def decompose_w4_free(g: Graph, robust: bool = False) -> ClassCertificate:
    """3-refined decomposition with residual <= 1 for W4-induced-minor-free graphs."""
    try:
        d = decompose_general(g, w4_solver(g if robust else None))
    except Rejected as e:
        return _reject(e.rejection)
    return _accept(d)


# ----------------------------------------------------------------------- K5-

@dataclass(frozen=True)
class K5mShape:
    tag: str  # Complete, Wheel, Biclique33, CoC6, NotRecognized
    center: Optional[int] = None


def _is_cycle(g: Graph) -> bool:
    try:
        cycle_order(g)
    except PreconditionError:
        return False
    return True


def classify_triconnected_k5m(g: Graph) -> K5mShape:
    """Which of the four 3-connected K5-minus-free shapes g is, if any."""
    if not is_triconnected(g):
        raise PreconditionError("classifier needs a 3-connected graph")
    n = g.n
    if g.m == n * (n - 1) // 2:
        return K5mShape("Complete")
    centers = [v for v in g.vertices if g.degree(v) == n - 1]
    if n >= 5 and len(centers) == 1 and _is_cycle(g.without(centers)):
        return K5mShape("Wheel", centers[0])
    if n == 6 and g.m == 9:
        co = g.complement()
        if co.m == 6 and all(len(c) == 3 and co.is_clique(c) for c in co.components()):
            return K5mShape("Biclique33")
    if n == 6 and g.m == 9 and _is_cycle(g.complement()):
        return K5mShape("CoC6")
    return K5mShape("NotRecognized")


def _path(bags, refinement, g: Graph, f, fmap: Optional[FMapping] = None) -> Tuple[RefinedTreeDecomposition, FMapping]:
    d = RefinedTreeDecomposition(tuple(bags), tuple((i, i + 1) for i in range(len(bags) - 1)),
                                 tuple(refinement), 3)
    return d, fmap if fmap is not None else derive_fmapping(d, f)


def k5m_triconnected_solver(inst: TriconnectedInstance, host: Optional[Graph] = None) -> SolverOutput:
    """Shape-by-shape 3-refined decomposition with residual <= 1 and at most n - 3 nodes.

    With ``host`` given, bags of complete skeletons are scanned for independent sets of size 5.
    """
    g = inst.graph
    shape = classify_triconnected_k5m(g)
    vs = list(g.vertices)
    if shape.tag == "Complete":
        u = _smallest(vs, 3)
        for e in sorted(inst.fstar):
            if not set(e) & u:
                return Rejection(f"F*-edge {e} misses the refinement set {sorted(u)} of a complete skeleton",
                                 g, e, "uncovered_fstar", frozenset(vs))
        if host is not None:
            bad = _scan_bags(host, [frozenset(vs)], 5)
            if bad is not None:
                return bad
        return _path([vs], [u], g, inst.f, {e: 0 for e in inst.f})
    if shape.tag == "Wheel":
        v0 = shape.center
        rim = cycle_order(g.without([v0]))
        v = (v0,) + rim  # v[0] center, v[1..n-1] rim in cyclic order
        n = len(v)
        bags = [frozenset((v0, v[i], v[i + 1], v[n - 1])) for i in range(1, n - 2)]
        pos = {x: i for i, x in enumerate(v)}
        fmap: FMapping = {}
        for e in inst.f:
            i, j = sorted((pos[e[0]], pos[e[1]]))
            if (1 <= i and j <= n - 2) or (i, j) == (1, n - 1):
                t = i
            elif i == 0 and j <= n - 3:
                t = j
            else:
                t = n - 3
            fmap[e] = t - 1
        return _path(bags, [_smallest(b, 3) for b in bags], g, inst.f, fmap)
    if shape.tag == "Biclique33":
        a = frozenset(sorted(vs[:1] + [x for x in vs if not g.has_edge(vs[0], x) and x != vs[0]]))
        bags = [a | {b} for b in vs if b not in a]
        return _path(bags, [a] * len(bags), g, inst.f)
    if shape.tag == "CoC6":
        u = vs[0]
        w = next(x for x in vs if x != u and not g.has_edge(u, x))
        rest = g.without([u, w])
        ends = sorted(x for x in rest.vertices if rest.degree(x) == 1)
        p = [ends[0]]
        while len(p) < 4:
            p.append(next(x for x in rest.adj(p[-1]) if x not in p))
        bags = [frozenset((p[i], p[i + 1], u, w)) for i in range(3)]
        return _path(bags, [_smallest(b, 3) for b in bags], g, inst.f)
    return Rejection("unrecognized 3-connected shape", g, kind="shape")


def k5m_solver(host: Optional[Graph] = None) -> TriconnectedSolver:
    return TriconnectedSolver(1, 3, lambda inst: k5m_triconnected_solver(inst, host), "k5m")


def decompose_k5m_free(g: Graph, robust: bool = False) -> ClassCertificate:
    """3-refined decomposition with residual <= 1 for K5-minus-induced-minor-free graphs."""
    try:
        d = decompose_general(g, k5m_solver(g if robust else None))
    except Rejected as e:
        return _reject(e.rejection)
    return _accept(d)


# --------------------------------------------------------------------- K_{2,q}

def decompose_k2q(g: Graph, q: int, robust: bool = False) -> ClassCertificate:
    """Clique tree of the LEX-M triangulation; every bag is a PMC of g."""
    if q < 2:
        raise PreconditionError("decompose_k2q needs q >= 2")
    h, _ = triangulate(g)
    td, _ = clique_tree_with_fmapping(h)
    if robust:
        bad = _scan_bags(g, td.bags, 2 * q - 1)
        if bad is not None:
            return _reject(bad)
    alphas = tuple(alpha_exact(g.subgraph(b), limit=max(len(b), 1)) for b in td.bags)
    return _accept(td, bag_alpha=alphas)


PIPELINES = {
    "chordal": lambda g, q=None, robust=False: decompose_chordal(g),
    "w4": lambda g, q=None, robust=False: decompose_w4_free(g, robust),
    "k5m": lambda g, q=None, robust=False: decompose_k5m_free(g, robust),
    "k2q": lambda g, q=None, robust=False: decompose_k2q(g, q, robust),
}
