"""Topology-aware probe planners and the exact brute-force oracle.

These planners read the ground-truth graph through the view (they are
upper-bound / oracle strategies, not deployable probers): they pick short
paths from the observed core toward nodes whose neighborhoods pay off,
trading path length against benefit.

Ratio comparisons use integer cross-multiplication throughout, so
tie-breaking (higher ratio, then shorter path, then smaller id) is exact.
"""

import heapq
import os
from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import BLACK, GRAY, WHITE, ProbeTrace

DEFAULT_EXACT_MAX_NODES = 20


class ExactLimitError(RuntimeError):
    """Instance exceeds the configured exhaustive-search size cap."""


@dataclass
class RootedView:
    """Hop distances and BFS-tree parents from the collapsed observed core.

    All black nodes act as a single root at distance 0; gray nodes sit at
    distance 1.  parent[v] is the BFS predecessor (-1 for roots and
    unreached nodes); dist[v] is -1 where unreachable.
    """

    dist: np.ndarray
    parent: np.ndarray


def rooted_view(view, limit=None):
    """Multi-source BFS from the black set over the ground truth."""
    g = view.graph
    dist = np.full(g.n, -1, dtype=np.int64)
    parent = np.full(g.n, -1, dtype=np.int64)
    queue = deque()
    for b in view.black_nodes():
        dist[b] = 0
        queue.append(int(b))
    while queue:
        u = queue.popleft()
        if limit is not None and dist[u] >= limit:
            continue
        for v in g.neighbors(u):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                parent[v] = u
                queue.append(int(v))
    return RootedView(dist=dist, parent=parent)


def _path_from_parents(rv, v, color):
    """Root-side-first node path ending at v (collapsed root excluded)."""
    path = []
    cur = v
    while cur >= 0 and color[cur] != BLACK:
        path.append(int(cur))
        cur = int(rv.parent[cur])
    path.reverse()
    return path


def _ratio_gt(b1, l1, b2, l2):
    return b1 * l2 > b2 * l1


def tada_probe(view, k):
    """Adaptive ratio-greedy planner with path probing.

    Repeatedly picks the node v maximizing (white neighbors of v) divided by
    (hops from the observed core), subject to fitting the remaining budget,
    then probes the whole shortest path to v.  Ties prefer shorter paths,
    then smaller ids.  Stops early once no reachable candidate within budget
    has positive benefit.  Achieves at least OPT/(r+1) where r is the radius
    of an optimal solution.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    work = view.copy()
    steps = []
    used = 0
    while used < k:
        remaining = k - used
        rv = rooted_view(work, limit=remaining)
        frontier = np.flatnonzero((rv.dist >= 1) & (rv.dist <= remaining))
        best = None  # (benefit, length, node)
        for v in frontier:
            v = int(v)
            length = rv.dist[v]
            benefit = work.white_neighbor_count(v)
            if benefit <= 0:
                continue
            if best is None or _ratio_gt(benefit, length, best[0], best[1]) \
                    or (benefit * best[1] == best[0] * length
                        and (length, v) < (best[1], best[2])):
                best = (benefit, int(length), v)
        if best is None:
            break
        for node in _path_from_parents(rv, best[2], work.color):
            steps.append((node, work.probe(node)))
            used += 1
    return ProbeTrace.from_steps(steps)


def _chain(pred, v, color):
    """Walk predecessor links from v back to the observed core."""
    chain = []
    cur = v
    while cur >= 0 and color[cur] != BLACK:
        chain.append(int(cur))
        cur = int(pred[cur])
    chain.reverse()
    return chain


def _chain_coverage(work, chain):
    """White nodes observed if the chain were probed in order."""
    covered = set()
    color = work.color
    g = work.graph
    for p in chain:
        nbrs = g.neighbors(p)
        covered.update(nbrs[color[nbrs] == WHITE].tolist())
    return covered


def _best_ratio_path(work, limit):
    """Dijkstra-style search for the path with the best benefit ratio.

    Every reachable node is first seeded with its BFS shortest path and the
    full on-path benefit (all whites observed along the path), so the result
    never scores below the plain ending-node ratio used by tada_probe.
    Relaxations extend a settled node's path by one hop and are accepted
    only when they strictly raise the ratio and keep the path simple.

    Returns (path, on_path_benefit) or None when nothing has benefit > 0.
    """
    g = work.graph
    rv = rooted_view(work, limit=limit)
    color = work.color
    n = g.n
    d = np.zeros(n, dtype=np.int64)
    delta = np.full(n, -1, dtype=np.int64)
    pred = np.full(n, -1, dtype=np.int64)
    heap = []
    frontier = np.flatnonzero((rv.dist >= 1) & (rv.dist <= limit))
    for v in frontier:
        v = int(v)
        d[v] = rv.dist[v]
        pred[v] = rv.parent[v]
        delta[v] = len(_chain_coverage(work, _chain(pred, v, color)))
        heapq.heappush(heap, (-delta[v] / d[v], int(d[v]), v, int(delta[v])))
    settled = np.zeros(n, dtype=bool)
    while heap:
        _, dv, v, deltav = heapq.heappop(heap)
        if settled[v] or dv != d[v] or deltav != delta[v]:
            continue  # stale entry
        settled[v] = True
        if d[v] + 1 > limit:
            continue
        chain_v = _chain(pred, v, color)
        covered = _chain_coverage(work, chain_v)
        on_chain = set(chain_v)
        for w in g.neighbors(v):
            w = int(w)
            if color[w] == BLACK or settled[w] or w in on_chain:
                continue
            if delta[w] < 0:
                continue  # out of the BFS horizon, can't fit the budget
            wn = g.neighbors(w)
            wn = wn[color[wn] == WHITE]
            marg = sum(1 for x in wn.tolist() if x not in covered)
            nd = d[v] + 1
            ndelta = delta[v] + marg
            # accept only a strict ratio improvement
            if ndelta * d[w] > delta[w] * nd:
                d[w] = nd
                delta[w] = ndelta
                pred[w] = v
                heapq.heappush(heap, (-ndelta / nd, nd, w, ndelta))
    best = None  # (delta, d, node)
    for v in np.flatnonzero(delta > 0):
        v = int(v)
        if best is None or _ratio_gt(delta[v], d[v], best[0], best[1]) \
                or (delta[v] * best[1] == best[0] * d[v]
                    and (d[v], v) < (best[1], best[2])):
            best = (int(delta[v]), int(d[v]), v)
    if best is None:
        return None
    return _chain(pred, best[2], color), best[0]


def tada_heuristic(view, k):
    """Path planner that credits discoveries made along the path itself.

    Same budget/stall/tie rules as tada_probe, but candidate paths are
    scored by everything they would newly observe, not just the ending
    node's neighborhood, and paths may deviate from BFS trees when that
    raises the ratio.  Keeps the OPT/(r+1) guarantee.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    work = view.copy()
    steps = []
    used = 0
    while used < k:
        sel = _best_ratio_path(work, k - used)
        if sel is None:
            break
        path, _ = sel
        for node in path:
            steps.append((node, work.probe(node)))
            used += 1
    return ProbeTrace.from_steps(steps)


@dataclass
class ExactResult:
    """Outcome of exhaustive probe-set search."""

    opt_value: int
    opt_sets: list       # every optimal set, as sorted node tuples
    radius_min: int      # min over optimal sets of max hops from the core


def exact_optimal(view, k, max_nodes=None):
    """Enumerate all feasible probe sets of size <= k (brute force).

    A set is feasible iff every connected component of its induced subgraph
    touches an initially gray node, which is exactly when some probe order
    exists.  The value of a set is order-invariant: the union of member
    neighborhoods minus what was already observed.

    Refuses instances larger than max_nodes (default 20, env override
    PROBE_LAB_EXACT_MAX_NODES) since the search is exponential.
    """
    if k < 0:
        raise ValueError("need k >= 0")
    if max_nodes is None:
        max_nodes = int(os.environ.get("PROBE_LAB_EXACT_MAX_NODES",
                                       DEFAULT_EXACT_MAX_NODES))
    g = view.graph
    if g.n > max_nodes:
        raise ExactLimitError(
            f"instance has {g.n} nodes, cap is {max_nodes}; raise max_nodes "
            "to search anyway")
    rv = rooted_view(view)
    pool = [v for v in range(g.n) if 1 <= rv.dist[v] <= k]
    nbr_mask = [0] * g.n
    for v in pool:
        m = 0
        for w in g.neighbors(v):
            m |= 1 << int(w)
        nbr_mask[v] = m
    white_mask = 0
    gray_mask = 0
    for v in range(g.n):
        if view.color[v] == WHITE:
            white_mask |= 1 << v
        elif view.color[v] == GRAY:
            gray_mask |= 1 << v
    bit = {v: 1 << v for v in pool}

    def feasible(subset):
        todo = 0
        for s in subset:
            todo |= bit[s]
        while todo:
            seed = todo & -todo
            comp = seed
            frontier = seed
            while frontier:
                grow = 0
                for s in subset:
                    if bit[s] & frontier:
                        grow |= nbr_mask[s]
                grow &= todo & ~comp
                comp |= grow
                frontier = grow
            if not (comp & gray_mask):
                return False
            todo &= ~comp
        return True

    opt_value = 0
    opt_sets = [()]
    for size in range(1, min(k, len(pool)) + 1):
        for subset in combinations(pool, size):
            if not feasible(subset):
                continue
            union = 0
            for s in subset:
                union |= nbr_mask[s]
            value = (union & white_mask).bit_count()
            if value > opt_value:
                opt_value = value
                opt_sets = [subset]
            elif value == opt_value:
                opt_sets.append(subset)
    radius_min = min(
        max((int(rv.dist[v]) for v in s), default=0) for s in opt_sets)
    return ExactResult(opt_value=opt_value, opt_sets=opt_sets,
                       radius_min=radius_min)


def batch_greedy(view, k):
    """Non-adaptive greedy cover over the initial gray set.

    Adds the gray node with the largest marginal count of still-uncovered
    white neighbors, breaking ties by smaller id; returns min(k, gray count)
    nodes in selection order.  Standard (1 - 1/e) guarantee versus the best
    size-k batch.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    grays = [int(v) for v in view.gray_nodes()]
    white_sets = {}
    for v in grays:
        nbrs = view.graph.neighbors(v)
        white_sets[v] = set(
            int(w) for w in nbrs[view.color[nbrs] == WHITE])
    chosen = []
    covered = set()
    while len(chosen) < k and len(chosen) < len(grays):
        best = None
        best_gain = -1
        for v in grays:
            if v in white_sets and v not in chosen:
                gain = len(white_sets[v] - covered)
                if gain > best_gain:
                    best, best_gain = v, gain
        chosen.append(best)
        covered |= white_sets[best]
    return chosen


def batch_coverage(view, nodes):
    """White nodes a batch of initially-gray probes would observe."""
    covered = set()
    for v in nodes:
        nbrs = view.graph.neighbors(int(v))
        covered.update(int(w) for w in nbrs[view.color[nbrs] == WHITE])
    return len(covered)


def naive_greedy(view, k):
    """Probe the gray node with the most white neighbors, k times.

    The textbook-looking baseline that hardness instances defeat: it never
    looks past one hop, so it stalls at zero on adversarial stars.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    work = view.copy()
    steps = []
    for _ in range(k):
        best = None
        best_gain = 0
        for v in work.gray_nodes():
            gain = work.white_neighbor_count(int(v))
            if gain > best_gain:
                best, best_gain = int(v), gain
        if best is None:
            break
        steps.append((best, work.probe(best)))
    return ProbeTrace.from_steps(steps)


def export_ilp(view, k, sink):
    """Write the budgeted-probing ILP for this view as an LP-format file.

    sink is a path or writable file object.  Returns the in-memory model.
    See lp.build_probe_ilp for the formulation.
    """
    from . import lp

    problem = lp.build_probe_ilp(view, k)
    text = lp.format_lp(problem)
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w") as fh:
            fh.write(text)
    return problem
