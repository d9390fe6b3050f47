"""Ramsey complexes, GF(p) cohomology and the certificates they yield."""

from .complexes import (
    Graph,
    InvalidInput,
    SimplicialComplex,
    boundary_simplex,
    complete_graph,
    cycle_graph,
    discrete_complex,
    g_free_edge_complex,
    independence_complex,
    is_face,
    path_graph,
    simplex_complex,
)
from .criterion import (
    Certificate,
    certify_chromatic,
    certify_no_face_coloring,
    certify_ramsey,
    vanishing_bound,
)
from .homology import BettiTable, SparseMatrixGFp, incidence_matrices, rank_mod_p, reduced_betti
from .oracles import brute_ramsey_holds, chromatic_number, contains_subgraph, exists_face_coloring
from .polytopal import (
    Budget,
    BudgetExhausted,
    GroupAction,
    Skeleton,
    elementary_abelian_action,
    enumerate_skeleton,
    hom_complex,
    part_complex,
    rainbow_complex,
    ram_cell_test,
    ram_vertex_test,
)

__version__ = "0.1.0"
