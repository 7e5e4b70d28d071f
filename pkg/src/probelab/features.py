"""Feature vectors over the observed part of a view.

Candidates are scored on the observed graph only: seven per-node metrics
plus four view-global counts.  No ground-truth information leaks in; every
score below is a function of (observed nodes, observed edges, colors).
"""

from dataclasses import dataclass

import numpy as np

from . import centrality
from .graph import BLACK, GRAY, WHITE, Graph

FEATURE_NAMES = ("bc", "cc", "eig", "pr", "katz", "clc", "deg",
                 "bnum", "gnum", "bdeg", "bedg")


@dataclass(frozen=True)
class FeatureVector:
    """Raw (unstandardized) candidate features; standardization happens in
    model training, not here."""

    bc: float
    cc: float
    eig: float
    pr: float
    katz: float
    clc: float
    deg: float
    bnum: float
    gnum: float
    bdeg: float
    bedg: float

    def as_array(self):
        return np.array([getattr(self, f) for f in FEATURE_NAMES],
                        dtype=np.float64)


def observed_graph(view):
    """Extract the observed graph G' = (V', E') plus an id map.

    Returns (subgraph, nodes) where nodes[i] is the underlying id of
    subgraph node i; nodes are ordered by ascending underlying id.
    """
    g = view.graph
    nodes = view.observed_nodes()
    sub_id = np.full(g.n, -1, dtype=np.int64)
    sub_id[nodes] = np.arange(nodes.size, dtype=np.int64)
    black = view.color == BLACK
    # every observed edge has a black endpoint, so scanning black rows
    # finds them all; keep black-black edges from the smaller endpoint only
    rows = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(g.indptr))
    src_black = black[rows]
    u = rows[src_black]
    v = g.indices[src_black]
    keep = ~black[v] | (u < v)
    a = sub_id[u[keep]]
    b = sub_id[v[keep]]
    return _subgraph_from_pairs(nodes.size, a, b, g.labels[nodes]), nodes


def _subgraph_from_pairs(n, a, b, labels):
    """Build a Graph from unique undirected pairs without re-canonicalizing."""
    g = Graph.__new__(Graph)
    g.n = int(n)
    src = np.concatenate([a, b])
    dst = np.concatenate([b, a])
    order = np.lexsort((dst, src))
    g.indices = dst[order]
    g.indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(g.indptr, src + 1, 1)
    np.cumsum(g.indptr, out=g.indptr)
    g.labels = np.asarray(labels, dtype=np.int64)
    g._label_pos = None
    g._degrees = np.diff(g.indptr)
    return g


def feature_matrix(view, nodes=None):
    """Feature rows for observed nodes (defaults to all gray candidates).

    Returns (nodes, matrix) with one row per node ordered like FEATURE_NAMES.
    All scores are computed on the observed graph in a single pass, which is
    what per-step adaptive probers should call.
    """
    if nodes is None:
        nodes = view.gray_nodes()
    nodes = np.asarray(nodes, dtype=np.int64)
    sub, observed = observed_graph(view)
    sub_id = np.full(view.graph.n, -1, dtype=np.int64)
    sub_id[observed] = np.arange(observed.size, dtype=np.int64)
    idx = sub_id[nodes]
    if (idx < 0).any():
        bad = nodes[idx < 0]
        raise ValueError(f"nodes not observed: {bad.tolist()}")

    bc_raw, dist_sum, reach = centrality._brandes_all(sub)
    bc = bc_raw / 2.0
    cc = centrality._closeness_from(dist_sum, reach, sub.n)
    eig, lam = centrality._eigen_power(sub)
    pr = centrality.pagerank(sub)
    kz = centrality.katz(sub, alpha=centrality.katz_alpha(lam))
    clc = centrality.clustering(sub)
    deg = sub.degrees.astype(np.float64)

    black_sub = view.color[observed] == BLACK
    bnum = float(np.count_nonzero(black_sub))
    gnum = float(np.count_nonzero(view.color[observed] == GRAY))
    bdeg = float(sub.degrees[black_sub].sum())
    # black-black edges, counted once each
    rows = np.repeat(np.arange(sub.n, dtype=np.int64), np.diff(sub.indptr))
    bb = black_sub[rows] & black_sub[sub.indices] & (rows < sub.indices)
    bedg = float(np.count_nonzero(bb))

    mat = np.empty((nodes.size, len(FEATURE_NAMES)), dtype=np.float64)
    mat[:, 0] = bc[idx]
    mat[:, 1] = cc[idx]
    mat[:, 2] = eig[idx]
    mat[:, 3] = pr[idx]
    mat[:, 4] = kz[idx]
    mat[:, 5] = clc[idx]
    mat[:, 6] = deg[idx]
    mat[:, 7] = bnum
    mat[:, 8] = gnum
    mat[:, 9] = bdeg
    mat[:, 10] = bedg
    return nodes, mat


def feature_vector(view, u):
    """FeatureVector for a single observed node (convenience wrapper)."""
    _, mat = feature_matrix(view, nodes=[int(u)])
    return FeatureVector(*mat[0])
