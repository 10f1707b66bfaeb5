"""Reduction engine: general graphs to blocks, blocks to SPQR skeletons,
3-connected skeletons to a pluggable class-specific solver.

Solvers return either ``(decomposition, fmapping)`` or a ``Rejection``.  The
engine raises ``Rejected`` when any skeleton is rejected, carrying the
skeleton as certificate.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .connectivity import block_cutpoint_tree, is_biconnected, spqr_tree
from .decomp import (FMapping, RefinedTreeDecomposition, TreeDecomposition, as_refined, check_fmapping,
                     glue_on_clique_cutset, is_fstar_covering, residual_independence_number, single_bag,
                     validate)
from .errors import PreconditionError, TindError
from .graph import Edge, Graph, norm_edge


@dataclass(frozen=True)
class TriconnectedInstance:
    graph: Graph
    f: FrozenSet[Edge] = frozenset()
    fstar: FrozenSet[Edge] = frozenset()
    class_tag: str = ""

    def __post_init__(self):
        f = frozenset(norm_edge(*e) for e in self.f)
        fstar = frozenset(norm_edge(*e) for e in self.fstar)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "fstar", fstar)
        if not fstar <= f:
            raise PreconditionError("F* must be a subset of F")
        if any(not self.graph.has_edge(*e) for e in f):
            raise PreconditionError("F must be a set of edges of G")


@dataclass(frozen=True)
class Rejection:
    """Why a skeleton was refused: ``kind`` is "hole", "independent_set",
    "disjoint_fstar", "uncovered_fstar" or "shape"; ``bag`` holds the bag an
    independent-set witness lies in."""
    reason: str
    skeleton: Optional[Graph] = None
    witness: Tuple[int, ...] = ()
    kind: str = ""
    bag: FrozenSet[int] = frozenset()

    def __str__(self) -> str:
        return self.reason


SolverOutput = Union[Tuple[RefinedTreeDecomposition, FMapping], Rejection]


@dataclass(frozen=True)
class TriconnectedSolver:
    """A solver for 3-connected members of a class, with its (k, ell) budget."""
    k: int
    ell: int
    solve: Callable[[TriconnectedInstance], SolverOutput]
    class_tag: str = ""


class Rejected(TindError):
    """A solver rejected a 3-connected skeleton."""

    def __init__(self, rejection: Rejection):
        super().__init__(rejection.reason)
        self.rejection = rejection


class SolverContractError(TindError, AssertionError):
    """A solver returned a decomposition that breaks its contract."""


def _smallest(bag: Iterable[int], count: int) -> FrozenSet[int]:
    return frozenset(sorted(bag)[:max(0, count)])


def cycle_order(c: Graph) -> Tuple[int, ...]:
    """Cyclic order from the smallest vertex toward its smaller neighbor."""
    if c.n < 3 or c.m != c.n or any(c.degree(v) != 2 for v in c.vertices) or not c.is_connected():
        raise PreconditionError("graph is not a cycle")
    order = [c.vertices[0], min(c.adj(c.vertices[0]))]
    while len(order) < c.n:
        a, b = sorted(c.adj(order[-1]))
        order.append(a if a != order[-2] else b)
    return tuple(order)


def cycle_decomposition(c: Graph, ell: int, f: Iterable[Sequence[int]] = ()) -> Tuple[RefinedTreeDecomposition, FMapping]:
    """Path of h-2 bags {v_i, v_{i+1}, v_h} over a cycle v_1..v_h, plus an F-mapping."""
    v = cycle_order(c)
    h = len(v)
    bags = [frozenset((v[i], v[i + 1], v[h - 1])) for i in range(h - 2)]
    tree = [(i, i + 1) for i in range(h - 3)]
    refinement = [_smallest(b, min(ell, 3)) for b in bags]
    pos = {x: i for i, x in enumerate(v)}
    fmap: FMapping = {}
    for a, b in f:
        e = norm_edge(a, b)
        if not c.has_edge(*e):
            raise PreconditionError(f"{a}{b} is not an edge of the cycle")
        i, j = sorted((pos[a], pos[b]))
        if j == i + 1:
            # 0-based: v_i v_{i+1} -> t_i for i <= h-3, v_{h-2} v_{h-1} -> t_{h-3}
            fmap[e] = min(i, h - 3)
        else:
            fmap[e] = 0  # v_h v_1
    return RefinedTreeDecomposition(tuple(bags), tuple(tree), tuple(refinement), ell), fmap


def _check_solver_output(inst: TriconnectedInstance, solver: TriconnectedSolver,
                         d: TreeDecomposition, fmap: FMapping) -> None:
    g = inst.graph
    res = validate(g, d)
    if not res:
        raise SolverContractError(f"solver output is not a valid decomposition: {res.message}")
    if d.ell > solver.ell:
        raise SolverContractError(f"solver used ell={d.ell} above its budget {solver.ell}")
    if not is_fstar_covering(d, inst.fstar):
        raise SolverContractError("solver output is not F*-covering")
    if not check_fmapping(d, fmap, inst.f):
        raise SolverContractError("solver F-mapping is incomplete or wrong")
    r = residual_independence_number(g, d)
    if r > solver.k:
        raise SolverContractError(f"solver output has residual {r} > k = {solver.k}")


def r_node_instances(g: Graph, class_tag: str = "") -> List[TriconnectedInstance]:
    """The instance handed to the solver for each R-node of the SPQR tree of g."""
    s = spqr_tree(g)
    return [_r_instance(s, a, class_tag) for a in s.of_kind("R")]


def _r_instance(s, a: int, class_tag: str) -> TriconnectedInstance:
    node = s.nodes[a]
    f = frozenset(s.nodes[b].pair() for b in s.neighbors(a))
    return TriconnectedInstance(node.skeleton(), f, f & node.virtual, class_tag)


def decompose_biconnected_traced(g: Graph, solver: TriconnectedSolver,
                                 check: bool = True) -> Tuple[RefinedTreeDecomposition, Tuple[int, ...]]:
    """As ``decompose_biconnected``; also returns the SPQR node each output node came from."""
    if not is_biconnected(g):
        raise PreconditionError("decompose_biconnected needs a 2-connected graph")
    s = spqr_tree(g)
    ell = solver.ell
    bags: List[FrozenSet[int]] = []
    refinement: List[FrozenSet[int]] = []
    tree: List[Tuple[int, int]] = []
    origin: List[int] = []
    p_node = {}
    for b in s.of_kind("P"):
        p_node[b] = len(bags)
        bags.append(s.nodes[b].vertices)
        refinement.append(_smallest(s.nodes[b].vertices, min(ell, 2)))
        origin.append(b)
    for a, node in enumerate(s.nodes):
        if node.kind == "P":
            continue
        pairs = {b: s.nodes[b].pair() for b in s.neighbors(a)}
        if node.kind == "S":
            d, fmap = cycle_decomposition(node.skeleton(), ell, pairs.values())
        else:
            inst = _r_instance(s, a, solver.class_tag)
            out = solver.solve(inst)
            if isinstance(out, Rejection):
                if out.skeleton is None:
                    out = replace(out, skeleton=inst.graph)
                raise Rejected(out)
            d, fmap = out
            d = as_refined(d)
            _check_solver_output(inst, solver, d, fmap)
        off = len(bags)
        bags += d.bags
        refinement += d.refinement
        tree += [(x + off, y + off) for x, y in d.tree]
        origin += [a] * d.size
        for b, pair in pairs.items():
            tree.append((p_node[b], off + fmap[pair]))
    out = RefinedTreeDecomposition(tuple(bags), tuple(tree), tuple(refinement), ell)
    if check:
        _check_final(g, out, solver)
    return out, tuple(origin)


def decompose_biconnected(g: Graph, solver: TriconnectedSolver, check: bool = True) -> RefinedTreeDecomposition:
    """Refined decomposition of a 2-connected graph via its SPQR tree; raises ``Rejected``."""
    return decompose_biconnected_traced(g, solver, check)[0]


def _check_final(g: Graph, d: RefinedTreeDecomposition, solver: TriconnectedSolver) -> None:
    res = validate(g, d)
    if not res:
        raise SolverContractError(f"assembled decomposition is invalid: {res.message}")
    bound = max(3 - solver.ell, solver.k)
    r = residual_independence_number(g, d)
    if r > bound:
        raise SolverContractError(f"assembled residual {r} exceeds max(3 - ell, k) = {bound}")


def _block_decomposition(g: Graph, block: FrozenSet[int], solver: TriconnectedSolver) -> RefinedTreeDecomposition:
    if len(block) <= 2:
        return single_bag(block, _smallest(block, min(solver.ell, 2)), solver.ell)
    return decompose_biconnected(g.subgraph(block), solver, check=False)


def _decompose_connected(g: Graph, solver: TriconnectedSolver) -> RefinedTreeDecomposition:
    bc = block_cutpoint_tree(g)
    done = {0}
    d = _block_decomposition(g, bc.blocks[0], solver)
    covered = set(bc.blocks[0])
    # attach blocks in breadth-first order of the block-cutpoint tree
    queue = [0]
    while queue:
        i = queue.pop(0)
        for j, blk in enumerate(bc.blocks):
            if j in done:
                continue
            shared = covered & blk
            if not shared:
                continue
            if len(shared) != 1:
                raise TindError("internal inconsistency: blocks share more than a cut vertex")
            done.add(j)
            queue.append(j)
            c = frozenset(shared)
            db = _block_decomposition(g, blk, solver)
            sub = g.subgraph(covered | blk)
            d = glue_on_clique_cutset(sub, covered - c, blk - c, c, d, db, check=False)
            covered |= blk
    return d


def decompose_general(g: Graph, solver: TriconnectedSolver, check: bool = True) -> RefinedTreeDecomposition:
    """Refined decomposition of any graph: components, then blocks, then SPQR skeletons."""
    if g.n < 1:
        raise PreconditionError("decompose_general needs at least one vertex")
    d = None
    covered: FrozenSet[int] = frozenset()
    for comp in g.components():
        dc = _decompose_connected(g.subgraph(comp), solver)
        if d is None:
            d = dc
        else:
            d = glue_on_clique_cutset(g.subgraph(covered | comp), covered, comp, (), d, dc, check=False)
        covered |= comp
    d = RefinedTreeDecomposition(d.bags, d.tree, d.refinement, solver.ell)
    if check:
        _check_final(g, d, solver)
    return d


def trivial_solver(k: int = 0, ell: int = 0) -> TriconnectedSolver:
    """A solver that rejects every 3-connected skeleton (for inputs without R-nodes)."""
    return TriconnectedSolver(k, ell, lambda inst: Rejection("no 3-connected skeletons allowed", inst.graph, kind="shape"), "none")
