"""Experiment harness: sampled views, strategy runs, CSV/markdown output.

One experiment draws ``samples`` validation views from a dataset (each a
BFS sample of ``frac`` of the nodes), runs every configured strategy from
an identical copy of each view up to the largest budget, and reports newly
observed node counts at every budget checkpoint.

Output is deterministic for a fixed (config, seed): rows are generated in a
fixed order and wall-clock timings stay out of the CSV unless explicitly
requested (they are never deterministic and live in the summary instead).
"""

import csv
import hashlib
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import oracles
from .features import feature_matrix
from .graph import load_edge_list, make_initial_view
from .learning import load_model
from .planner import exact_optimal, tada_heuristic, tada_probe
from .sampling import SampleConfig, bfs_sample, gen_hardness
from .strategies import canonical_name, run_strategy

DEFAULT_BUDGETS = (1, 100, 200, 300)
CSV_COLUMNS = ("dataset", "strategy", "sample_id", "budget", "new_nodes",
               "seed")


def default_workers():
    raw = os.environ.get("PROBE_LAB_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class ExperimentConfig:
    dataset: str
    strategies: tuple
    budgets: tuple = DEFAULT_BUDGETS
    samples: int = 50
    frac: float = 0.05
    seed: int = 0
    workers: int = 0            # 0 -> PROBE_LAB_THREADS or serial
    model_paths: dict = field(default_factory=dict)
    timings: bool = False
    dataset_name: str = ""

    def __post_init__(self):
        self.strategies = tuple(canonical_name(s) for s in self.strategies)
        if not self.strategies:
            raise ValueError("need at least one strategy")
        self.budgets = tuple(int(b) for b in self.budgets)
        if not self.budgets or any(b < 1 for b in self.budgets):
            raise ValueError("budgets must be positive")
        if list(self.budgets) != sorted(set(self.budgets)):
            raise ValueError("budgets must be strictly increasing")
        if not (0 < self.frac <= 1):
            raise ValueError("frac must be in (0, 1]")
        if self.samples < 1:
            raise ValueError("need samples >= 1")
        if not self.dataset_name:
            self.dataset_name = os.path.splitext(
                os.path.basename(str(self.dataset)))[0]


@dataclass
class ResultRow:
    dataset: str
    strategy: str
    sample_id: int
    budget: int
    new_nodes: int
    seed: int
    wall_time: float


def view_checksum(view):
    """Stable digest of a view's observable state (for fairness logging).

    Covers colors and visible edges only, so a view rebuilt from its saved
    black set checksums the same as the original sample.
    """
    h = hashlib.sha256()
    h.update(view.color.tobytes())
    h.update(str(view.observed_edge_count).encode())
    return h.hexdigest()[:16]


def _run_one_sample(graph, config, models, sample_id):
    rng = np.random.default_rng([config.seed, sample_id])
    target = max(1, round(config.frac * graph.n))
    view = bfs_sample(graph, target, rng)
    checksum = view_checksum(view)
    max_budget = max(config.budgets)
    out = []
    for strat_idx, name in enumerate(config.strategies):
        strat_rng = np.random.default_rng([config.seed, sample_id, strat_idx])
        start = time.perf_counter()
        trace = run_strategy(name, view, max_budget, rng=strat_rng,
                             models=models)
        wall = time.perf_counter() - start
        out.append((name, [trace.new_nodes_at(b) for b in config.budgets],
                    wall))
    return sample_id, checksum, out


def _worker(payload):
    graph, config, models, sample_id = payload
    return _run_one_sample(graph, config, models, sample_id)


def cmd_experiment(config, out_csv=None):
    """Run an experiment; returns (rows, summary markdown, metadata dict).

    When out_csv is given the CSV and a JSON metadata sidecar are written.
    """
    graph = load_edge_list(config.dataset)
    models = {name: load_model(path)
              for name, path in config.model_paths.items()}
    for name in config.strategies:
        if name in ("LINREG", "LOGREG") and name not in models:
            raise ValueError(f"strategy {name} requires --model {name}=path")

    workers = config.workers or default_workers()
    results = {}
    if workers > 1 and config.samples > 1:
        payloads = [(graph, config, models, i) for i in range(config.samples)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for sample_id, checksum, out in pool.map(_worker, payloads):
                results[sample_id] = (checksum, out)
    else:
        for i in range(config.samples):
            sample_id, checksum, out = _run_one_sample(graph, config,
                                                       models, i)
            results[sample_id] = (checksum, out)

    rows = []
    checksums = []
    for i in range(config.samples):
        checksum, per_strategy = results[i]
        checksums.append(checksum)
        for name, counts, wall in per_strategy:
            for budget, count in zip(config.budgets, counts):
                rows.append(ResultRow(
                    dataset=config.dataset_name, strategy=name, sample_id=i,
                    budget=budget, new_nodes=count, seed=config.seed,
                    wall_time=wall))

    summary = _summarize(config, rows)
    meta = {
        "dataset": str(config.dataset),
        "dataset_name": config.dataset_name,
        "nodes": graph.n,
        "edges": graph.edge_count,
        "strategies": list(config.strategies),
        "budgets": list(config.budgets),
        "samples": config.samples,
        "frac": config.frac,
        "seed": config.seed,
        "view_checksums": checksums,
        "notes": [
            "absolute values depend on the dataset snapshot and sampling "
            "protocol; comparisons against externally published numbers "
            "are not reproducible and should be read as directional only",
        ],
    }
    if out_csv:
        write_csv(rows, out_csv, timings=config.timings)
        with open(str(out_csv) + ".meta.json", "w") as fh:
            json.dump(meta, fh, indent=2)
            fh.write("\n")
    return rows, summary, meta


def write_csv(rows, sink, timings=False):
    """Serialize rows; wall_time is opt-in because it breaks determinism."""
    columns = CSV_COLUMNS + ("wall_time",) if timings else CSV_COLUMNS
    own = not hasattr(sink, "write")
    fh = open(sink, "w", newline="") if own else sink
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            record = [row.dataset, row.strategy, row.sample_id, row.budget,
                      row.new_nodes, row.seed]
            if timings:
                record.append(f"{row.wall_time:.6f}")
            writer.writerow(record)
    finally:
        if own:
            fh.close()


def csv_text(rows, timings=False):
    buf = io.StringIO()
    write_csv(rows, buf, timings=timings)
    return buf.getvalue()


def _summarize(config, rows):
    """Markdown table of mean new_nodes per strategy/budget plus timings."""
    by = {}
    walls = {}
    for row in rows:
        by.setdefault((row.strategy, row.budget), []).append(row.new_nodes)
        walls.setdefault(row.strategy, set()).add(
            (row.sample_id, row.wall_time))
    lines = [f"## {config.dataset_name}: mean newly observed nodes "
             f"({config.samples} samples, frac={config.frac})", ""]
    header = "| strategy | " + " | ".join(
        f"k={b}" for b in config.budgets) + " | wall s (info) |"
    lines.append(header)
    lines.append("|" + "---|" * (len(config.budgets) + 2))
    for name in config.strategies:
        cells = []
        for b in config.budgets:
            vals = by.get((name, b), [0])
            cells.append(f"{np.mean(vals):.2f}")
        wall = np.mean([w for _, w in walls.get(name, {(0, 0.0)})])
        lines.append(f"| {name} | " + " | ".join(cells)
                     + f" | {wall:.3f} |")
    return "\n".join(lines)


def cmd_train(dataset, kind, horizon, sample_config=None, out=None,
              pair_cap=None, seed=0):
    """Build a training set from a reference graph and fit a model.

    Returns (model, info).  kind is "linear" or "logistic".
    """
    from . import learning

    graph = load_edge_list(dataset)
    cfg = sample_config or SampleConfig(seed=seed)
    rng = np.random.default_rng(cfg.seed)
    kwargs = {}
    if pair_cap is not None:
        kwargs["pair_cap"] = pair_cap
    samples, pairs = learning.build_training_set(
        graph, cfg, horizon, rng=rng, **kwargs)
    info = {"samples": len(samples), "pairs": len(pairs),
            "graph_nodes": graph.n, "graph_edges": graph.edge_count,
            "horizon": horizon, "kind": kind}
    if kind == "linear":
        model = learning.train_linear(samples, horizon=horizon)
        X = np.stack([s.features for s in samples])
        y = np.array([s.label for s in samples])
        pred = model.linear_scores(X)
        info["rmse"] = float(np.sqrt(np.mean((pred - y) ** 2)))
    elif kind == "logistic":
        model = learning.train_logistic(pairs, horizon=horizon)
        info["final_loss"] = model.loss_history[-1]
        info["epochs"] = len(model.loss_history)
    else:
        raise ValueError(f"unknown model kind {kind!r}")
    if out:
        learning.save_model(model, out)
        info["out"] = str(out)
    return model, info


def cmd_sample(dataset, samples, frac, seed, out_dir):
    """Write sample view descriptors (JSON, one per sample); returns paths."""
    graph = load_edge_list(dataset)
    os.makedirs(out_dir, exist_ok=True)
    target = max(1, round(frac * graph.n))
    paths = []
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        view = bfs_sample(graph, target, rng)
        blacks = [int(graph.labels[b]) for b in view.black_nodes()]
        grays = [int(graph.labels[g]) for g in view.gray_nodes()]
        payload = {
            "dataset": str(dataset),
            "sample_id": i,
            "target_size": target,
            "seed": seed,
            "checksum": view_checksum(view),
            "black": blacks,
            "gray": grays,
        }
        path = os.path.join(out_dir, f"sample_{i:03d}.json")
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        paths.append(path)
    return paths


def load_sample_view(graph, descriptor_path):
    """Rebuild a view from a descriptor written by cmd_sample."""
    with open(descriptor_path) as fh:
        payload = json.load(fh)
    seeds = [graph.index_of(b) for b in payload["black"]]
    return make_initial_view(graph, seeds)


def cmd_gen_hardness(n, m, g_star_index, layers, out_prefix):
    """Write a hardness instance as an edge list plus a seed-set file."""
    inst = gen_hardness(n, m, g_star_index, layers=layers)
    edge_path = f"{out_prefix}.edges"
    seed_path = f"{out_prefix}.seeds"
    with open(edge_path, "w") as fh:
        fh.write(f"# hardness instance: n={n} m={m} "
                 f"g_star={inst.g_star} layers={layers}\n")
        for u, v in inst.graph.edges():
            fh.write(f"{u} {v}\n")
    with open(seed_path, "w") as fh:
        fh.write("# initially probed (black) nodes, one per line\n")
        fh.write("0\n")
    return inst, edge_path, seed_path


def load_seeds(path):
    seeds = []
    with open(path) as fh:
        for line in fh:
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            seeds.append(int(stripped))
    if not seeds:
        raise ValueError(f"no seeds in {path}")
    return seeds


def cmd_export_ilp(dataset, seeds_path, k, out):
    """Load a dataset and seed set, export the probing ILP as LP text."""
    from .planner import export_ilp

    graph = load_edge_list(dataset)
    seeds = [graph.index_of(s) for s in load_seeds(seeds_path)]
    view = make_initial_view(graph, seeds)
    return export_ilp(view, k, out)


def run_verify(seed=0, rounds=25):
    """Self-check: invariants and oracle comparisons on random instances.

    Returns a list of (check_name, passed, detail) triples.
    """
    from . import centrality
    from .generators import gnp_random_graph, random_connected_gnp
    from .planner import batch_greedy, batch_coverage

    rng = np.random.default_rng(seed)
    checks = []

    # probe laws: incremental view == from-scratch reconstruction
    ok, detail = True, ""
    for _ in range(rounds):
        g = gnp_random_graph(int(rng.integers(4, 16)), 0.3, rng)
        seeds = sorted(set(
            int(x) for x in rng.integers(0, g.n, size=rng.integers(1, 3))))
        view = make_initial_view(g, seeds)
        probed = []
        for _ in range(int(rng.integers(1, 6))):
            grays = view.gray_nodes()
            if grays.size == 0:
                break
            u = int(grays[rng.integers(grays.size)])
            view.probe(u)
            probed.append(u)
            col, edges, _ = oracles.recompute_view(g, seeds, probed)
            if not np.array_equal(col, view.color):
                ok, detail = False, "color partition drifted"
                break
            if edges != view.observed_edge_count:
                ok, detail = False, "edge counter drifted"
                break
        if not ok:
            break
    checks.append(("probe laws (incremental vs recomputed)", ok, detail))

    # planner guarantee against the exhaustive oracle
    ok, detail = True, ""
    for _ in range(rounds):
        g = random_connected_gnp(int(rng.integers(5, 11)), 0.35, rng)
        view = make_initial_view(g, [int(rng.integers(g.n))])
        k = int(rng.integers(1, 4))
        res = exact_optimal(view, k)
        bound = res.opt_value / (res.radius_min + 1)
        for planner in (tada_probe, tada_heuristic):
            got = planner(view, k).total_new
            if got + 1e-9 < bound:
                ok = False
                detail = (f"{planner.__name__} got {got} < bound {bound:.3f} "
                          f"(opt={res.opt_value}, r={res.radius_min})")
                break
        if not ok:
            break
    checks.append(("planner guarantee vs exact oracle", ok, detail))

    # batch greedy (1 - 1/e)
    ok, detail = True, ""
    for _ in range(rounds):
        g = gnp_random_graph(int(rng.integers(6, 12)), 0.3, rng)
        view = make_initial_view(g, [int(rng.integers(g.n))])
        k = int(rng.integers(1, 4))
        chosen = batch_greedy(view, k) if view.gray_count else []
        if not chosen:
            continue
        opt, _ = oracles.brute_best_batch(view, k)
        if batch_coverage(view, chosen) + 1e-9 < (1 - 1 / np.e) * opt:
            ok, detail = False, "greedy below (1-1/e) bound"
            break
    checks.append(("batch greedy approximation bound", ok, detail))

    # centralities vs brute force / dense algebra
    ok, detail = True, ""
    for _ in range(max(5, rounds // 3)):
        g = gnp_random_graph(int(rng.integers(3, 9)), 0.4, rng)
        bc_f, _ = oracles.brute_betweenness(g)
        if np.max(np.abs(centrality.betweenness(g) - bc_f)) > 1e-9:
            ok, detail = False, "betweenness mismatch"
            break
        if np.max(np.abs(centrality.closeness(g)
                         - oracles.brute_closeness(g))) > 1e-12:
            ok, detail = False, "closeness mismatch"
            break
        if np.max(np.abs(centrality.eigenvector(g)
                         - oracles.dense_eigenvector(g))) > 1e-6:
            ok, detail = False, "eigenvector mismatch"
            break
        if np.max(np.abs(centrality.pagerank(g)
                         - oracles.dense_pagerank(g))) > 1e-6:
            ok, detail = False, "pagerank mismatch"
            break
        if np.max(np.abs(centrality.katz(g)
                         - oracles.dense_katz(g))) > 1e-6:
            ok, detail = False, "katz mismatch"
            break
        if np.max(np.abs(centrality.clustering(g)
                         - oracles.brute_clustering(g))) > 1e-12:
            ok, detail = False, "clustering mismatch"
            break
    checks.append(("centralities vs independent oracles", ok, detail))

    # hardness instances blind every local-view method
    ok, detail = True, ""
    inst = gen_hardness(8, 6, 3)
    _, mat = feature_matrix(inst.view)
    if not (mat == mat[0]).all():
        ok, detail = False, "gray candidates distinguishable on hardness"
    if tada_probe(inst.view, 1).total_new != inst.m:
        ok, detail = False, "tada-probe missed the hardness optimum"
    checks.append(("hardness symmetry and planner optimum", ok, detail))
    return checks
