"""Brute-force reference implementations, deliberately slow and literal.

The production code paths are checked against these on small instances by
the test suite and the ``verify`` subcommand.  Nothing here shares code with
the fast implementations: betweenness enumerates shortest paths pairwise in
exact rational arithmetic, the spectral scores come from dense linear
algebra, and view recomputation rebuilds colors from the definitions.
"""

from collections import deque
from fractions import Fraction

import numpy as np

from .graph import BLACK, GRAY, WHITE


def _bfs_sigma(graph, s):
    """Distances and shortest-path counts from s (plain BFS, no numba)."""
    dist = {s: 0}
    sigma = {s: 1}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v in graph.neighbors(u):
            v = int(v)
            if v not in dist:
                dist[v] = dist[u] + 1
                sigma[v] = 0
                queue.append(v)
            if dist[v] == dist[u] + 1:
                sigma[v] += sigma[u]
    return dist, sigma


def brute_betweenness(graph):
    """Pair-by-pair shortest path counting in exact rationals.

    bc(v) = sum over unordered pairs {s,t} (v excluded) of the fraction of
    s-t shortest paths that pass through v.
    """
    n = graph.n
    all_dist = {}
    all_sigma = {}
    for s in range(n):
        all_dist[s], all_sigma[s] = _bfs_sigma(graph, s)
    bc = [Fraction(0)] * n
    for s in range(n):
        for t in range(s + 1, n):
            if t not in all_dist[s]:
                continue
            d_st = all_dist[s][t]
            total = all_sigma[s][t]
            for v in range(n):
                if v == s or v == t or v not in all_dist[s]:
                    continue
                if all_dist[s][v] + all_dist[v].get(t, -10 * n) == d_st:
                    through = all_sigma[s][v] * all_sigma[v][t]
                    bc[v] += Fraction(through, total)
    return np.array([float(x) for x in bc]), bc


def brute_closeness(graph):
    n = graph.n
    out = np.zeros(n)
    if n <= 1:
        return out
    for u in range(n):
        dist, _ = _bfs_sigma(graph, u)
        r = len(dist)
        total = sum(dist.values())
        if r > 1 and total > 0:
            out[u] = ((r - 1) / total) * ((r - 1) / (n - 1))
    return out


def brute_clustering(graph):
    n = graph.n
    out = np.zeros(n)
    for u in range(n):
        nbrs = [int(v) for v in graph.neighbors(u)]
        d = len(nbrs)
        if d < 2:
            continue
        closed = 0
        for i in range(d):
            for j in range(i + 1, d):
                if graph.has_edge(nbrs[i], nbrs[j]):
                    closed += 1
        out[u] = closed / (d * (d - 1) / 2.0)
    return out


def _dense_adjacency(graph):
    A = np.zeros((graph.n, graph.n))
    for u in range(graph.n):
        for v in graph.neighbors(u):
            A[u, int(v)] = 1.0
    return A


def _component_lists(graph):
    seen = [False] * graph.n
    comps = []
    for s in range(graph.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in graph.neighbors(u):
                v = int(v)
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def dense_eigenvector(graph):
    """Per-component principal eigenvector from a full eigendecomposition."""
    A = _dense_adjacency(graph)
    out = np.zeros(graph.n)
    for comp in _component_lists(graph):
        idx = np.array(comp)
        sub = A[np.ix_(idx, idx)]
        if sub.sum() == 0:
            continue
        vals, vecs = np.linalg.eigh(sub)
        vec = np.abs(vecs[:, -1])
        out[idx] = vec / np.linalg.norm(vec)
    return out


def dense_lambda_max(graph):
    A = _dense_adjacency(graph)
    if A.sum() == 0:
        return 0.0
    return float(np.linalg.eigvalsh(A)[-1])


def dense_pagerank(graph, damping=0.85):
    """Solve the PageRank linear system directly (dangling mass uniform)."""
    n = graph.n
    A = _dense_adjacency(graph)
    deg = A.sum(axis=0)
    M = np.zeros((n, n))
    for j in range(n):
        if deg[j] > 0:
            M[:, j] = A[:, j] / deg[j]
        else:
            M[:, j] = 1.0 / n
    x = np.linalg.solve(np.eye(n) - damping * M,
                        np.full(n, (1.0 - damping) / n))
    return x


def dense_katz(graph, alpha=None):
    n = graph.n
    lam = dense_lambda_max(graph)
    if alpha is None:
        alpha = 0.1 if lam <= 0 else min(0.1, 0.85 / lam)
    A = _dense_adjacency(graph)
    return np.linalg.solve(np.eye(n) - alpha * A, np.ones(n))


def recompute_view(graph, seeds, probes):
    """Rebuild a view literally from the definitions, step by step.

    Returns (color array, observed edge count, per-step discovery counts).
    Raises AssertionError if any probe targets a node that is not gray under
    the from-scratch reconstruction.
    """
    black = set(int(s) for s in seeds)
    counts = []

    def colors():
        col = np.full(graph.n, WHITE, dtype=np.uint8)
        for b in black:
            col[b] = BLACK
        for v in range(graph.n):
            if col[v] == BLACK:
                continue
            if any(int(w) in black for w in graph.neighbors(v)):
                col[v] = GRAY
        return col

    col = colors()
    for u in probes:
        u = int(u)
        assert col[u] == GRAY, f"probe target {u} is not gray"
        observed_before = int(np.count_nonzero(col != WHITE))
        black.add(u)
        col = colors()
        counts.append(int(np.count_nonzero(col != WHITE)) - observed_before)
    edge_count = sum(
        1 for u in range(graph.n) for v in graph.neighbors(u)
        if u < int(v) and (u in black or int(v) in black))
    return col, edge_count, counts


def brute_best_batch(view, k):
    """Exhaustive best k-subset of initial grays by white-neighbor coverage."""
    from itertools import combinations

    grays = [int(v) for v in view.gray_nodes()]
    white_sets = {}
    for v in grays:
        nbrs = view.graph.neighbors(v)
        white_sets[v] = frozenset(
            int(w) for w in nbrs[view.color[nbrs] == WHITE])
    best = 0
    best_set = ()
    for size in range(1, min(k, len(grays)) + 1):
        for subset in combinations(grays, size):
            value = len(frozenset().union(*(white_sets[v] for v in subset)))
            if value > best:
                best = value
                best_set = subset
    return best, best_set


def brute_best_sequence(view, k):
    """Exhaustive search over feasible probe sequences up to length k."""
    best = [0, ()]

    def rec(work, seq, total):
        if total > best[0]:
            best[0] = total
            best[1] = tuple(seq)
        if len(seq) == k:
            return
        for v in work.gray_nodes():
            child = work.copy()
            gained = child.probe(int(v))
            seq.append(int(v))
            rec(child, seq, total + gained)
            seq.pop()

    rec(view.copy(), [], 0)
    return best[0], best[1]
