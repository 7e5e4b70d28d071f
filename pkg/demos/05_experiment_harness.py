"""Run the experiment harness end to end on a generated dataset.

Equivalent CLI:
    probelab experiment --dataset demo.edges --strategies DEG,RAND,TADA-H \
        --budgets 1,20,40 --samples 6 --frac 0.08 --seed 3 --out results.csv
"""

import os
import tempfile

import numpy as np

import probelab as pl
from probelab import harness

workdir = tempfile.mkdtemp(prefix="probelab_demo_")
dataset = os.path.join(workdir, "demo.edges")
g = pl.preferential_attachment_graph(500, 3, np.random.default_rng(21))
with open(dataset, "w") as fh:
    fh.write("# demo preferential attachment graph\n")
    for u, v in g.edges():
        fh.write(f"{u}\t{v}\n")

cfg = harness.ExperimentConfig(
    dataset=dataset,
    strategies=("DEG", "RAND", "TADA-H"),
    budgets=(1, 20, 40),
    samples=6,
    frac=0.08,
    seed=3,
)
out_csv = os.path.join(workdir, "results.csv")
rows, summary, meta = harness.cmd_experiment(cfg, out_csv=out_csv)

print(summary)
print(f"rows written: {len(rows)} -> {out_csv}")
print(f"meta sidecar: {out_csv}.meta.json")
print(f"sample checksums: {len(meta['view_checksums'])} "
      f"(first {meta['view_checksums'][0][:12]}...)")

# identical config gives identical bytes, regardless of worker count
rows2, _, _ = harness.cmd_experiment(cfg)
print(f"deterministic re-run: {harness.csv_text(rows) == harness.csv_text(rows2)}")
