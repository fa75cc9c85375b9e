"""Lower bounds on the independence number of graphs with a given number of
s-cliques, the algorithms behind them, and graphs showing they are sharp."""

__version__ = "0.1.0"

from .bounds import (
    ConstantChain,
    aks_bound,
    solve_constant_chain,
    solve_delta,
    solve_lambda,
    theorem1_bound,
    theorem2_bound,
)
from .cliques import CliqueStats, count_cliques, count_cliques_in_subset
from .constructions import (
    ConstructionSpec,
    build_clique_plus_trianglefree,
    build_lex_blowup,
    lex_product,
    top_up_triangles,
)
from .estimators import CliqueCounter, IndependentSetFinder, check_graph
from .graph import Graph, VertexSet, gnp_graph, make_rng, triangle_free_process
from .indset import (
    IndependentSetCertificate,
    aks_greedy,
    best_certificate,
    exact_alpha,
    neighborhood_clean_set,
    pivot_recursion,
    select_pivot_vertex,
    sparsify_and_recurse,
    turan_greedy,
)
from .io import GraphFormatError, load_graph, save_graph

__all__ = [
    "CliqueCounter",
    "CliqueStats",
    "ConstantChain",
    "ConstructionSpec",
    "Graph",
    "GraphFormatError",
    "IndependentSetCertificate",
    "IndependentSetFinder",
    "VertexSet",
    "aks_bound",
    "aks_greedy",
    "best_certificate",
    "build_clique_plus_trianglefree",
    "build_lex_blowup",
    "check_graph",
    "count_cliques",
    "count_cliques_in_subset",
    "exact_alpha",
    "gnp_graph",
    "lex_product",
    "load_graph",
    "make_rng",
    "neighborhood_clean_set",
    "pivot_recursion",
    "save_graph",
    "select_pivot_vertex",
    "solve_constant_chain",
    "solve_delta",
    "solve_lambda",
    "sparsify_and_recurse",
    "theorem1_bound",
    "theorem2_bound",
    "top_up_triangles",
    "triangle_free_process",
    "turan_greedy",
]
