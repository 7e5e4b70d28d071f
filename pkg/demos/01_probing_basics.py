"""Walk through the probing model on a small synthetic graph.

Nodes are black (probed), gray (seen but unprobed), or white (invisible).
Probing a gray node turns it black, reveals its neighbors, and reports how
many nodes were white a moment ago.
"""

import numpy as np

import probelab as pl

rng = np.random.default_rng(7)
g = pl.random_connected_gnp(30, 0.12, rng)
view = pl.make_initial_view(g, seeds=[0])

print(f"graph: {g.n} nodes, {g.edge_count} edges")
whites = g.n - view.observed_node_count
print(f"start: {view.black_count} black, {view.gray_count} gray, "
      f"{whites} white, {view.observed_edge_count} observed edges")

probed = []
for step in range(5):
    grays = view.gray_nodes()
    if grays.size == 0:
        print("frontier exhausted")
        break
    u = int(grays[0])
    gained = view.probe(u)
    probed.append(u)
    print(f"probe {u:3d}: +{gained} new nodes, frontier now "
          f"{view.gray_count}, observed edges {view.observed_edge_count}")

# a recorded sequence replays identically on a fresh copy of the start view
trace = pl.evaluate_sequence(pl.make_initial_view(g, seeds=[0]), probed)
print(f"replayed {len(probed)} probes: total_new={trace.total_new}, "
      f"per-step gains {[gain for _, gain in trace.steps]}")
