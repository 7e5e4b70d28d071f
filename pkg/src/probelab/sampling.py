"""Sampling incomplete views from reference graphs, plus hardness instances.

BFS sampling mimics how a crawler would have discovered the known part of a
network: probe outward from a random seed until the observed region (probed
nodes plus their exposed neighbors) reaches a target size.
"""

import math
import warnings
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import GRAY, WHITE, Graph, IncompleteView, make_initial_view


class SampleWarning(UserWarning):
    """Target size not reachable from the drawn seed's component."""


@dataclass
class SampleConfig:
    """Controls for drawing per-sample observed-region sizes.

    Sizes are drawn from a discrete power law p(s) proportional to s**gamma
    over [ceil(min_frac*n), floor(max_frac*n)].
    """

    min_frac: float = 0.005
    max_frac: float = 0.10
    gamma: float = -0.25
    sample_count: int = 50
    seed: int = 0

    def __post_init__(self):
        if not (0 < self.min_frac <= self.max_frac <= 1):
            raise ValueError("need 0 < min_frac <= max_frac <= 1")
        if self.sample_count < 1:
            raise ValueError("need sample_count >= 1")


def draw_sizes(config, n, rng):
    """Draw config.sample_count target sizes for a graph of n nodes."""
    lo = math.ceil(config.min_frac * n)
    hi = math.floor(config.max_frac * n)
    lo = max(lo, 1)
    if lo > hi:
        raise ValueError(
            f"empty size range for n={n}: [{lo}, {hi}] "
            f"(min_frac={config.min_frac}, max_frac={config.max_frac})")
    sizes = np.arange(lo, hi + 1, dtype=np.int64)
    weights = sizes.astype(np.float64) ** config.gamma
    weights /= weights.sum()
    return rng.choice(sizes, size=config.sample_count, p=weights)


def bfs_sample(graph, target_size, rng, seed_node=None):
    """Simulate BFS crawling until the observed region has target_size nodes.

    The seed is probed first; probing then follows BFS order with neighbors
    enqueued in ascending id.  Stops at the first step where observed nodes
    (black plus gray) reach target_size.  If the seed's component is too
    small the whole component is returned and a SampleWarning is emitted.
    """
    if target_size < 1:
        raise ValueError("need target_size >= 1")
    if seed_node is None:
        seed_node = int(rng.integers(graph.n))
    view = make_initial_view(graph, [seed_node])
    observed = view.initially_observed
    queue = deque(int(v) for v in graph.neighbors(seed_node))
    while observed < target_size and queue:
        u = queue.popleft()
        if view.color[u] != GRAY:
            continue
        nbrs = graph.neighbors(u)
        newly = nbrs[view.color[nbrs] == WHITE]  # ascending, like the CSR row
        observed += view.probe(u)
        queue.extend(int(v) for v in newly)
    if observed < target_size:
        warnings.warn(
            f"target size {target_size} exceeds the seed's reachable "
            f"component ({observed} nodes observed)", SampleWarning)
    return view


@dataclass
class HardnessInstance:
    """Star-shaped adversarial instance where local views carry no signal.

    One black hub neighbors n gray nodes; exactly one of them (g_star) hides
    the payoff.  With layers=2 each gray hides one private child and only
    g_star's child leads to the m bottom nodes.  All gray nodes look
    identical from inside the observed region.
    """

    graph: Graph
    view: IncompleteView
    g_star: int
    n: int
    m: int
    layers: int
    gray_nodes: list = field(default_factory=list)


def gen_hardness(n, m, g_star_index, layers=1):
    """Build a hardness instance; g_star_index selects which gray pays off."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    if not (0 <= g_star_index < n):
        raise ValueError("g_star_index out of range")
    if layers not in (1, 2):
        raise ValueError("layers must be 1 or 2")
    hub = 0
    grays = list(range(1, n + 1))
    g_star = grays[g_star_index]
    edges = [(hub, g) for g in grays]
    if layers == 1:
        whites = list(range(n + 1, n + 1 + m))
        edges += [(g_star, w) for w in whites]
        total = n + m + 1
    else:
        hidden = list(range(n + 1, 2 * n + 1))       # private child per gray
        bottom = list(range(2 * n + 1, 2 * n + 1 + m))
        edges += [(g, h) for g, h in zip(grays, hidden)]
        edges += [(hidden[g_star_index], w) for w in bottom]
        total = 2 * n + m + 1
    graph = Graph(total, edges)
    view = make_initial_view(graph, [hub])
    return HardnessInstance(graph=graph, view=view, g_star=g_star, n=n, m=m,
                            layers=layers, gray_nodes=grays)
