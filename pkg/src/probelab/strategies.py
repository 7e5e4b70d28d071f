"""Uniform strategy interface over baselines, planners and learned probers.

Metric baselines re-rank the current gray candidates by a single
observed-graph centrality after every probe.  Planner strategies (TADA,
TADA-H, NAIVE, GREEDY-BATCH) read ground truth through the view and serve
as upper bounds; LINREG/LOGREG need a trained model.
"""

import numpy as np

from . import centrality
from .features import observed_graph
from .graph import ProbeTrace, evaluate_sequence
from .learning import model_prober
from .planner import batch_greedy, naive_greedy, tada_heuristic, tada_probe

_METRIC_FUNCS = {
    "DEG": centrality.degree,
    "BC": centrality.betweenness,
    "CC": centrality.closeness,
    "PR": centrality.pagerank,
    "CLC": centrality.clustering,
    "EIG": centrality.eigenvector,
    "KATZ": centrality.katz,
}

STRATEGY_NAMES = ("DEG", "BC", "CC", "PR", "CLC", "EIG", "KATZ", "RAND",
                  "TADA", "TADA-H", "GREEDY-BATCH", "NAIVE",
                  "LINREG", "LOGREG")


def metric_prober(view, metric, k):
    """Probe the gray node that maximizes one centrality, k times.

    The metric is recomputed on the current observed graph before every
    probe.  Ties break to the smaller node id.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    func = _METRIC_FUNCS[metric.upper()]
    work = view.copy()
    steps = []
    for _ in range(k):
        grays = work.gray_nodes()
        if grays.size == 0:
            break
        sub, observed = observed_graph(work)
        scores = func(sub)
        sub_id = np.full(work.graph.n, -1, dtype=np.int64)
        sub_id[observed] = np.arange(observed.size, dtype=np.int64)
        gray_scores = scores[sub_id[grays]]
        pick = int(grays[int(np.argmax(gray_scores))])  # first max: smaller id
        steps.append((pick, work.probe(pick)))
    return ProbeTrace.from_steps(steps)


def rand_prober(view, k, rng):
    """Probe uniformly random gray nodes, k times."""
    if k < 1:
        raise ValueError("need k >= 1")
    work = view.copy()
    steps = []
    for _ in range(k):
        grays = work.gray_nodes()
        if grays.size == 0:
            break
        pick = int(grays[int(rng.integers(grays.size))])
        steps.append((pick, work.probe(pick)))
    return ProbeTrace.from_steps(steps)


def canonical_name(name):
    up = name.strip().upper()
    if up not in STRATEGY_NAMES:
        raise KeyError(f"unknown strategy {name!r}; "
                       f"choose from {', '.join(STRATEGY_NAMES)}")
    return up


def run_strategy(name, view, k, rng=None, models=None):
    """Run one named strategy on a copy of the view; returns its trace."""
    up = canonical_name(name)
    if up in _METRIC_FUNCS:
        return metric_prober(view, up, k)
    if up == "RAND":
        if rng is None:
            raise ValueError("RAND needs an rng")
        return rand_prober(view, k, rng)
    if up == "TADA":
        return tada_probe(view, k)
    if up == "TADA-H":
        return tada_heuristic(view, k)
    if up == "NAIVE":
        return naive_greedy(view, k)
    if up == "GREEDY-BATCH":
        return evaluate_sequence(view, batch_greedy(view, k))
    if up in ("LINREG", "LOGREG"):
        if not models or up not in models:
            raise ValueError(f"strategy {up} needs a trained model")
        model = models[up]
        expected = "linear" if up == "LINREG" else "logistic"
        if model.kind != expected:
            raise ValueError(f"{up} expects a {expected} model, "
                             f"got {model.kind}")
        return model_prober(view, model, k)
    raise KeyError(up)
