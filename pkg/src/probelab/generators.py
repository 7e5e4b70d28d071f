"""Random graph generators used by the demos, tests and synthetic datasets."""

import numpy as np

from .graph import Graph


def gnp_random_graph(n, p, rng):
    """Erdos-Renyi G(n, p) via numpy upper-triangle sampling."""
    if n < 1:
        raise ValueError("need n >= 1")
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(iu.size) < p
    return Graph(n, zip(iu[mask].tolist(), ju[mask].tolist()))


def _is_connected(graph):
    if graph.n == 1:
        return True
    seen = np.zeros(graph.n, dtype=bool)
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        u = stack.pop()
        for v in graph.neighbors(u):
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(int(v))
    return count == graph.n


def random_connected_gnp(n, p, rng, max_tries=1000):
    """Resample G(n, p) until connected; raises after max_tries failures."""
    for _ in range(max_tries):
        g = gnp_random_graph(n, p, rng)
        if _is_connected(g):
            return g
    raise RuntimeError(f"no connected G({n},{p}) after {max_tries} tries")


def preferential_attachment_graph(n, m, rng):
    """Grow a graph by preferential attachment, m edges per new node.

    Produces heavy-tailed degrees with low clustering, a reasonable proxy
    for peer-to-peer network snapshots.  Starts from a clique on m+1 nodes.
    """
    if m < 1 or n < m + 1:
        raise ValueError("need n >= m+1 >= 2")
    edges = []
    # repeated-endpoint list makes degree-proportional sampling cheap
    endpoint_pool = []
    for u in range(m + 1):
        for v in range(u + 1, m + 1):
            edges.append((u, v))
            endpoint_pool.extend((u, v))
    for u in range(m + 1, n):
        targets = set()
        while len(targets) < m:
            targets.add(endpoint_pool[rng.integers(len(endpoint_pool))])
        for v in targets:
            edges.append((u, v))
            endpoint_pool.extend((u, v))
    return Graph(n, edges)
