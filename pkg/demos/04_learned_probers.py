"""Train a linear benefit model on one graph and probe another with it.

Labels come from a lookahead oracle: probe the candidate, then let the
heuristic planner spend the remaining horizon, and record the total. The
learned prober re-scores the frontier after every probe.
"""

import warnings

import numpy as np

import probelab as pl

def shuffled_pa(n, m, seed):
    # relabel so node ids carry no age signal
    rng = np.random.default_rng(seed)
    g = pl.preferential_attachment_graph(n, m, rng)
    perm = rng.permutation(n)
    return pl.Graph(n, [(int(perm[u]), int(perm[v])) for u, v in g.edges()])


train_graph = shuffled_pa(800, 2, 0)
test_graph = shuffled_pa(800, 2, 9)

cfg = pl.SampleConfig(min_frac=0.01, max_frac=0.08, sample_count=15, seed=1)
with warnings.catch_warnings():
    warnings.simplefilter("ignore", pl.SampleWarning)
    samples, pairs = pl.build_training_set(train_graph, cfg, horizon=3,
                                           rng=np.random.default_rng(1))
print(f"training set: {len(samples)} node samples, {len(pairs)} pairs")

linear = pl.train_linear(samples, horizon=3)
top = sorted(zip(pl.FEATURE_NAMES, linear.weights[1:]),
             key=lambda t: -abs(t[1]))[:4]
print("largest linear weights:", ", ".join(f"{n}={w:+.2f}" for n, w in top))

logistic = pl.train_logistic(pairs, horizon=3)
print(f"logistic: {len(logistic.loss_history)} epochs, final loss "
      f"{logistic.loss_history[-1]:.4f}")

models = {"LINREG": linear, "LOGREG": logistic}
k = 60
print(f"\nmean new nodes over 5 sampled views of the held-out graph, k={k}:")
for name in ("DEG", "RAND", "TADA", "LINREG", "LOGREG"):
    total = 0
    for i in range(5):
        view = pl.bfs_sample(test_graph, 40, np.random.default_rng([4, i]))
        total += pl.run_strategy(name, view, k,
                                 rng=np.random.default_rng([5, i]),
                                 models=models).total_new
    print(f"  {name:<7} {total / 5:7.1f}")

# models serialize to JSON and round-trip bit for bit
path = "/tmp/demo_linear.json"
pl.save_model(linear, path)
print(f"\nsaved model round-trips: {pl.load_model(path) == linear}")
