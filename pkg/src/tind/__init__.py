"""Refined tree decompositions with bounded residual independence number."""
from .errors import FormatError, OracleLimitError, PreconditionError, TindError
from .graph import Graph, contract_edge, parse_graph, parse_weights, serialize_graph
from .decomp import (RefinedTreeDecomposition, TreeDecomposition, format_decomposition, glue_on_clique_cutset,
                     independence_number, parse_decomposition, project_contraction, report,
                     residual_independence_number, strip_refinement, validate)
from .chordal import clique_tree_with_fmapping, is_chordal, lexm_minimal_triangulation, moplex_partition
from .connectivity import block_cutpoint_tree, check_spqr_invariants, spqr_tree
from .framework import (Rejected, Rejection, TriconnectedInstance, TriconnectedSolver, cycle_decomposition,
                        decompose_biconnected, decompose_general)
from .classes import (ClassCertificate, classify_triconnected_k5m, decompose_chordal, decompose_k2q,
                      decompose_k5m_free, decompose_w4_free)
from .solver import independent_packing, make_nice, mwis_td

__all__ = [name for name, obj in list(globals().items())
           if not name.startswith("_") and not isinstance(obj, type(errors))]
