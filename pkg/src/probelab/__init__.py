"""Adaptive node probing in incomplete networks.

A probing process starts from a partially observed graph (probed nodes are
black, their unprobed neighbors gray, everything else invisible) and spends
a budget of probes to reveal as much of the hidden topology as possible.
This package provides the probing model itself, topology-aware planners
with approximation guarantees, an exact oracle and ILP export for small
instances, classic centrality baselines, and learned probers trained on
sampled views.
"""

from .centrality import (
    ConvergenceError,
    betweenness,
    closeness,
    clustering,
    components,
    degree,
    eigenvector,
    katz,
    katz_alpha,
    lambda_max,
    pagerank,
)
from .features import FEATURE_NAMES, FeatureVector, feature_matrix, \
    feature_vector, observed_graph
from .generators import gnp_random_graph, preferential_attachment_graph, \
    random_connected_gnp
from .graph import (
    BLACK,
    GRAY,
    WHITE,
    EdgeListError,
    Graph,
    IncompleteView,
    NodeColor,
    ProbeError,
    ProbeTrace,
    evaluate_sequence,
    load_edge_list,
    make_initial_view,
)
from .learning import (
    Model,
    TrainingError,
    build_training_set,
    label_benefit,
    load_model,
    model_prober,
    save_model,
    train_linear,
    train_logistic,
)
from .lp import LPParseError, LPProblem, build_probe_ilp, format_lp, \
    parse_lp, solve_lp
from .planner import (
    ExactLimitError,
    ExactResult,
    batch_greedy,
    exact_optimal,
    export_ilp,
    naive_greedy,
    tada_heuristic,
    tada_probe,
)
from .sampling import HardnessInstance, SampleConfig, SampleWarning, \
    bfs_sample, draw_sizes, gen_hardness
from .strategies import STRATEGY_NAMES, canonical_name, run_strategy

__version__ = "0.1.0"

__all__ = [
    "BLACK", "GRAY", "WHITE", "NodeColor",
    "Graph", "IncompleteView", "ProbeTrace",
    "ProbeError", "EdgeListError", "ConvergenceError", "ExactLimitError",
    "TrainingError", "LPParseError", "SampleWarning",
    "load_edge_list", "make_initial_view", "evaluate_sequence",
    "gnp_random_graph", "random_connected_gnp",
    "preferential_attachment_graph",
    "SampleConfig", "draw_sizes", "bfs_sample",
    "HardnessInstance", "gen_hardness",
    "betweenness", "closeness", "clustering", "components", "degree",
    "eigenvector", "pagerank", "katz", "katz_alpha", "lambda_max",
    "FEATURE_NAMES", "FeatureVector", "feature_matrix", "feature_vector",
    "observed_graph",
    "tada_probe", "tada_heuristic", "exact_optimal", "ExactResult",
    "batch_greedy", "naive_greedy", "export_ilp",
    "LPProblem", "build_probe_ilp", "format_lp", "parse_lp", "solve_lp",
    "Model", "build_training_set", "label_benefit", "train_linear",
    "train_logistic", "model_prober", "save_model", "load_model",
    "STRATEGY_NAMES", "canonical_name", "run_strategy",
    "__version__",
]
