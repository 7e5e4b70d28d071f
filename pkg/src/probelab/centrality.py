"""Per-node centrality scores on (typically observed) graphs.

All functions score every node of the given graph and return a float64
array.  The BFS-heavy ones (betweenness, closeness, triangles) run through
numba kernels so that adaptive probers can afford to recompute them after
every probe; the spectral ones iterate sparse matvecs.
"""

import numpy as np
import scipy.sparse as sp
from numba import njit

from .graph import Graph


class ConvergenceError(RuntimeError):
    """Iteration cap hit before the tolerance; carries the last residual."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual={residual:.3e})")
        self.residual = float(residual)


@njit(cache=True)
def _brandes_kernel(indptr, indices, n):
    """One BFS per source: raw betweenness plus distance sums and reach."""
    bc = np.zeros(n, dtype=np.float64)
    dist_sum = np.zeros(n, dtype=np.int64)
    reach = np.zeros(n, dtype=np.int64)
    sigma = np.zeros(n, dtype=np.float64)
    dist = np.empty(n, dtype=np.int64)
    delta = np.zeros(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    for s in range(n):
        for i in range(n):
            dist[i] = -1
            sigma[i] = 0.0
            delta[i] = 0.0
        sigma[s] = 1.0
        dist[s] = 0
        order[0] = s
        head, tail = 0, 1
        total = 0
        while head < tail:
            u = order[head]
            head += 1
            total += dist[u]
            du1 = dist[u] + 1
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if dist[v] < 0:
                    dist[v] = du1
                    order[tail] = v
                    tail += 1
                if dist[v] == du1:
                    sigma[v] += sigma[u]
        dist_sum[s] = total
        reach[s] = tail
        for i in range(tail - 1, 0, -1):
            w = order[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            dw = dist[w]
            for j in range(indptr[w], indptr[w + 1]):
                v = indices[j]
                if dist[v] == dw - 1:
                    delta[v] += sigma[v] * coeff
            bc[w] += delta[w]
    return bc, dist_sum, reach


@njit(cache=True)
def _triangle_kernel(indptr, indices, n):
    """Twice the triangle count per node, via sorted-adjacency merges."""
    twice = np.zeros(n, dtype=np.int64)
    for u in range(n):
        for j in range(indptr[u], indptr[u + 1]):
            v = indices[j]
            # count common neighbors of u and v (sorted merge)
            a, b = indptr[u], indptr[v]
            ae, be = indptr[u + 1], indptr[v + 1]
            common = 0
            while a < ae and b < be:
                x, y = indices[a], indices[b]
                if x == y:
                    common += 1
                    a += 1
                    b += 1
                elif x < y:
                    a += 1
                else:
                    b += 1
            twice[u] += common
    return twice


@njit(cache=True)
def _component_kernel(indptr, indices, n):
    comp = np.full(n, -1, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    cid = 0
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = cid
        stack[0] = s
        top = 1
        while top > 0:
            top -= 1
            u = stack[top]
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if comp[v] < 0:
                    comp[v] = cid
                    stack[top] = v
                    top += 1
        cid += 1
    return comp, cid


def _as_csr(graph):
    return sp.csr_matrix(
        (np.ones(graph.indices.size, dtype=np.float64),
         graph.indices, graph.indptr), shape=(graph.n, graph.n))


def _brandes_all(graph):
    return _brandes_kernel(graph.indptr, graph.indices, graph.n)


def betweenness(graph):
    """Exact shortest-path betweenness, unnormalized.

    Each unordered node pair contributes once, so the raw double-counted
    accumulation is halved.
    """
    bc, _, _ = _brandes_all(graph)
    return bc / 2.0


def closeness(graph):
    """Component-aware closeness: (r-1)/sum_d scaled by (r-1)/(n-1).

    r counts nodes reachable from u (u included); isolated nodes score 0.
    """
    _, dist_sum, reach = _brandes_all(graph)
    return _closeness_from(dist_sum, reach, graph.n)


def _closeness_from(dist_sum, reach, n):
    cc = np.zeros(n, dtype=np.float64)
    if n <= 1:
        return cc
    ok = (reach > 1) & (dist_sum > 0)
    r1 = (reach[ok] - 1).astype(np.float64)
    cc[ok] = (r1 / dist_sum[ok]) * (r1 / (n - 1))
    return cc


def components(graph):
    """Connected-component labels (0..k-1) and the component count."""
    comp, k = _component_kernel(graph.indptr, graph.indices, graph.n)
    return comp, int(k)


def _eigen_power(graph, tol=1e-8, max_iter=1000):
    """Per-component power iteration on A+I; returns (vector, lambda_max).

    The vector is the Perron eigenvector of each component's adjacency,
    L2-normalized within the component.  Components without edges (isolated
    nodes included) score 0.  lambda_max is the largest adjacency eigenvalue
    across components, 0 for edgeless graphs.
    """
    n = graph.n
    comp, ncomp = components(graph)
    active = graph.degrees > 0
    x = np.zeros(n, dtype=np.float64)
    x[active] = 1.0
    norms = np.sqrt(np.bincount(comp, weights=x * x, minlength=ncomp))
    denom = norms[comp]
    denom[denom == 0] = 1.0
    x /= denom
    if not active.any():
        return x, 0.0
    A = _as_csr(graph)
    resid = np.inf
    for _ in range(max_iter):
        y = A @ x + x  # identity shift keeps bipartite components convergent
        y[~active] = 0.0
        norms = np.sqrt(np.bincount(comp, weights=y * y, minlength=ncomp))
        denom = norms[comp]
        denom[denom == 0] = 1.0
        y /= denom
        resid = float(np.max(np.abs(y - x)))
        x = y
        if resid < tol:
            break
    else:
        raise ConvergenceError("eigenvector power iteration hit the cap", resid)
    lam = np.bincount(comp, weights=x * (A @ x), minlength=ncomp)
    return x, float(lam.max())


def eigenvector(graph, tol=1e-8, max_iter=1000):
    """Principal adjacency eigenvector per component (see _eigen_power)."""
    vec, _ = _eigen_power(graph, tol=tol, max_iter=max_iter)
    return vec


def lambda_max(graph, tol=1e-8, max_iter=1000):
    """Largest adjacency eigenvalue (spectral radius for undirected graphs)."""
    _, lam = _eigen_power(graph, tol=tol, max_iter=max_iter)
    return lam


def pagerank(graph, damping=0.85, tol=1e-9, max_iter=200):
    """Uniform-teleport PageRank; dangling mass is spread uniformly."""
    n = graph.n
    A = _as_csr(graph)
    deg = graph.degrees
    dangling = deg == 0
    safe_deg = np.maximum(deg, 1).astype(np.float64)
    x = np.full(n, 1.0 / n)
    base = (1.0 - damping) / n
    resid = np.inf
    for _ in range(max_iter):
        contr = x / safe_deg
        contr[dangling] = 0.0
        dmass = float(x[dangling].sum())
        y = base + damping * (A @ contr + dmass / n)
        resid = float(np.abs(y - x).sum())
        x = y
        if resid < tol:
            return x
    raise ConvergenceError("pagerank iteration hit the cap", resid)


def katz_alpha(lam):
    """Attenuation rule: min(0.1, 0.85/lambda_max), 0.1 for edgeless graphs."""
    if lam <= 0:
        return 0.1
    return min(0.1, 0.85 / lam)


def katz(graph, alpha=None, tol=1e-9, max_iter=200):
    """Katz centrality with unit base: solves x = alpha*A*x + 1 iteratively."""
    if alpha is None:
        alpha = katz_alpha(lambda_max(graph))
    A = _as_csr(graph)
    x = np.ones(graph.n, dtype=np.float64)
    resid = np.inf
    for _ in range(max_iter):
        y = alpha * (A @ x) + 1.0
        resid = float(np.max(np.abs(y - x)))
        x = y
        if resid < tol:
            return x
    raise ConvergenceError("katz iteration hit the cap", resid)


def clustering(graph):
    """Local clustering: closed triples over possible triples, 0 for deg < 2."""
    twice_tri = _triangle_kernel(graph.indptr, graph.indices, graph.n)
    deg = graph.degrees.astype(np.float64)
    out = np.zeros(graph.n, dtype=np.float64)
    ok = deg >= 2
    # twice_tri already counts each triangle twice at its apex
    out[ok] = twice_tri[ok] / (deg[ok] * (deg[ok] - 1.0))
    return out


def degree(graph):
    """Degree as a float score."""
    return graph.degrees.astype(np.float64)
