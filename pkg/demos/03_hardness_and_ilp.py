"""Show the hardness family that blinds metric baselines, then solve the
probing problem exactly through its integer program.

In the one-layer instance every gray node looks identical to any feature
computed on the observed graph, so a metric ranker can only win by luck.
The planner finds the payload because it reasons about paths, not scores.
"""

import io

import numpy as np

import probelab as pl

inst = pl.gen_hardness(n=40, m=20, g_star_index=13)
print(f"hardness instance: {inst.graph.n} nodes, payload {inst.m} hidden "
      f"behind gray #{inst.g_star}")

_, feats = pl.feature_matrix(inst.view)
print(f"feature rows identical across grays: {(feats == feats[0]).all()}")

for name in ("DEG", "PR", "EIG", "TADA"):
    got = pl.run_strategy(name, inst.view, 1).total_new
    print(f"  {name:<5} k=1 -> {got} new nodes")

# the same objective as an integer program, solved exactly
g = pl.random_connected_gnp(12, 0.3, np.random.default_rng(5))
view = pl.make_initial_view(g, [0])
k = 2
prob = pl.build_probe_ilp(view, k)
text = pl.format_lp(prob)
print(f"\nILP for n={g.n}, k={k}: {len(prob.variables())} variables, "
      f"{len(prob.constraints)} constraints")
print("\n".join(text.splitlines()[:8]) + "\n...")

value, assign = pl.solve_lp(pl.parse_lp(text))
exact = pl.exact_optimal(view, k)
print(f"ILP optimum {value:.0f} vs exhaustive search {exact.opt_value}")

buf = io.StringIO()
pl.export_ilp(view, k, buf)
print(f"LP text round-trips: "
      f"{pl.parse_lp(buf.getvalue()).objective == prob.objective}")
