"""Constructive list edge colouring and total colouring for graphs of bounded treewidth."""

from .bipartite import (
    ChoosableCertificate,
    colour_choosable_extension,
    find_choosable_subset,
    find_lstar_colouring,
    is_choosable_via_lstar,
    kernel_for_colour,
    kernel_list_colour,
    lstar_lists,
)
from .edge_solver import list_size_threshold, peel_edges, replay_edge_peels, solve_list_edge
from .errors import (
    CapExceeded,
    CascadeExhausted,
    InternalAssertion,
    InvalidInput,
    PreconditionError,
    SearchBudgetExceeded,
    ToolkitError,
)
from .formats import parse_bipartite, parse_gr, parse_lists, parse_td, write_gr, write_td
from .generators import gen_gi, gen_partial_ktree
from .graph import BipartiteGraph, Graph, build_graph, edge_key, min_edge_degree_sum
from .oracles import (
    TotalColouring,
    oracle_choosable,
    oracle_edge_list_colour,
    oracle_total_colour,
    validate_edge_colouring,
    validate_total_colouring,
)
from .total_solver import solve_total, total_palette
from .treewidth import (
    RootedDecomposition,
    StructuralWitness,
    TreeDecomposition,
    extract_witness,
    min_degree_decompose,
    root_decomposition,
    validate_td,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "CapExceeded",
    "CascadeExhausted",
    "ChoosableCertificate",
    "Graph",
    "InternalAssertion",
    "InvalidInput",
    "PreconditionError",
    "RootedDecomposition",
    "SearchBudgetExceeded",
    "StructuralWitness",
    "ToolkitError",
    "TotalColouring",
    "TreeDecomposition",
    "build_graph",
    "colour_choosable_extension",
    "edge_key",
    "extract_witness",
    "find_choosable_subset",
    "find_lstar_colouring",
    "gen_gi",
    "gen_partial_ktree",
    "is_choosable_via_lstar",
    "kernel_for_colour",
    "kernel_list_colour",
    "list_size_threshold",
    "lstar_lists",
    "min_degree_decompose",
    "min_edge_degree_sum",
    "oracle_choosable",
    "oracle_edge_list_colour",
    "oracle_total_colour",
    "parse_bipartite",
    "parse_gr",
    "parse_lists",
    "parse_td",
    "peel_edges",
    "replay_edge_peels",
    "root_decomposition",
    "solve_list_edge",
    "solve_total",
    "total_palette",
    "validate_edge_colouring",
    "validate_td",
    "validate_total_colouring",
    "write_gr",
    "write_td",
]
