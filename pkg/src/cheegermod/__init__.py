"""Modularity lower bounds from recursive degree-weighted Cheeger cuts."""
from .cheeger import CutResult, cheeger_constant_exact, sweep_cut, verify_cheeger_sandwich
from .estimator import CheegerModularityClustering
from .generators import GeneratorSpec, generate
from .graph import Graph, GraphError, GraphFormatError, induce, load_graph, save_graph, vertex_weights
from .modularity import (
    Partition,
    assemble_bound,
    brute_force_modularity,
    modularity_lower_bound,
    score_partition,
)
from .partitioner import SeparatorConfig, SeparatorRun, audit_run, run_separator, single_cut_step
from .spectral import (
    LaplacianOperator,
    SolverConfig,
    check_lambda2_ordering,
    fiedler_vector,
    lambda2,
    laplacian_matvec,
)

__version__ = "0.1.0"

__all__ = [
    "CheegerModularityClustering",
    "CutResult",
    "GeneratorSpec",
    "Graph",
    "GraphError",
    "GraphFormatError",
    "LaplacianOperator",
    "Partition",
    "SeparatorConfig",
    "SeparatorRun",
    "SolverConfig",
    "assemble_bound",
    "audit_run",
    "brute_force_modularity",
    "check_lambda2_ordering",
    "cheeger_constant_exact",
    "fiedler_vector",
    "generate",
    "induce",
    "lambda2",
    "laplacian_matvec",
    "load_graph",
    "modularity_lower_bound",
    "run_separator",
    "save_graph",
    "score_partition",
    "single_cut_step",
    "sweep_cut",
    "vertex_weights",
    "verify_cheeger_sandwich",
]
