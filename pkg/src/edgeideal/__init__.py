"""Betti numbers and regularity of edge ideals via Hochster's formula."""

from .betti import (BettiDiagram, MultigradedEntry, betti_diagram, check_propagation, multigraded_betti,
                    multigraded_diagram, regularity, strand_bounds_hold, strand_extrema)
from .cycle_formulas import (count_subsets_by_components, first_row, full_diagram_cbc,
                             neighborhood_identity_check, second_row)
from .errors import (ConsistencyError, EdgeIdealError, EmptyIdealError, EmptySubsetError,
                     FaceLimitExceededError, NotBipartiteError, NotConnectedError, ParseError,
                     PreconditionViolatedError, SubsetOutOfRangeError, TooManyVerticesError)
from .graph_core import (BipartiteView, Graph, OddCycle, bipartite_complement, complement,
                         connected_components, count_induced_cycles, detect_bipartition,
                         induced_matching_number, induced_subgraph, is_chordal, min_induced_cycle)
from .homology import (HomologyVector, IndependenceComplexView, ReductionOutcome,
                       homology_with_reductions, reduce_biadjacency, reduced_homology)
from .polarization import (LoopedGraph, QuadraticIdeal, betti_nonsquarefree, polarize,
                           reg3_nonsquarefree, totally_disjoint_triples)
from .strands import (StrandReport, first_nonlinear_bipartite, first_nonlinear_general, froberg_linear,
                      reg3_bipartite, strand_report)

__all__ = [
    "BettiDiagram",
    "MultigradedEntry",
    "betti_diagram",
    "check_propagation",
    "multigraded_betti",
    "multigraded_diagram",
    "regularity",
    "strand_bounds_hold",
    "strand_extrema",
    "count_subsets_by_components",
    "first_row",
    "full_diagram_cbc",
    "neighborhood_identity_check",
    "second_row",
    "ConsistencyError",
    "EdgeIdealError",
    "EmptyIdealError",
    "EmptySubsetError",
    "FaceLimitExceededError",
    "NotBipartiteError",
    "NotConnectedError",
    "ParseError",
    "PreconditionViolatedError",
    "SubsetOutOfRangeError",
    "TooManyVerticesError",
    "BipartiteView",
    "Graph",
    "OddCycle",
    "bipartite_complement",
    "complement",
    "connected_components",
    "count_induced_cycles",
    "detect_bipartition",
    "induced_matching_number",
    "induced_subgraph",
    "is_chordal",
    "min_induced_cycle",
    "HomologyVector",
    "IndependenceComplexView",
    "ReductionOutcome",
    "homology_with_reductions",
    "reduce_biadjacency",
    "reduced_homology",
    "LoopedGraph",
    "QuadraticIdeal",
    "betti_nonsquarefree",
    "polarize",
    "reg3_nonsquarefree",
    "totally_disjoint_triples",
    "StrandReport",
    "first_nonlinear_bipartite",
    "first_nonlinear_general",
    "froberg_linear",
    "reg3_bipartite",
    "strand_report",
]
__version__ = "0.1.0"
