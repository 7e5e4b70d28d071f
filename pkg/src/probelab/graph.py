"""Ground-truth graphs and the partially observed view a prober works with.

The probing model splits nodes into three classes: fully observed (black),
partially observed (gray, known to exist because some black neighbor exposed
them) and unobserved (white).  Only gray nodes may be probed; probing reveals
the node's full neighborhood and promotes its white neighbors to gray.
"""

from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path

import numpy as np


class NodeColor(IntEnum):
    BLACK = 0   # fully observed (probed or seed)
    GRAY = 1    # observed but not probed; the only legal probe targets
    WHITE = 2   # unobserved


# plain ints: comparing numpy scalars against IntEnum members walks the
# enum metaclass on every miss, which is brutal inside probe loops
BLACK = int(NodeColor.BLACK)
GRAY = int(NodeColor.GRAY)
WHITE = int(NodeColor.WHITE)


class ProbeError(RuntimeError):
    """Violation of the probing contract (e.g. probing a non-gray node)."""


class EdgeListError(ValueError):
    """Malformed edge-list input; message carries the offending line number."""


class Graph:
    """Undirected simple graph over dense ids 0..n-1, stored as CSR adjacency.

    Construction canonicalizes the edge set: self-loops are dropped,
    duplicates collapse, and every edge is stored in both directions.
    ``labels[i]`` remembers the original id of dense node i for reporting.
    """

    __slots__ = ("n", "indptr", "indices", "labels", "_label_pos", "_degrees")

    def __init__(self, n, edges, labels=None):
        if n < 1:
            raise ValueError("empty graph")
        self.n = int(n)
        seen = set()
        for u, v in edges:
            u = int(u)
            v = int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                continue
            seen.add((u, v) if u < v else (v, u))
        m = len(seen)
        if m:
            arr = np.fromiter((x for uv in seen for x in uv), dtype=np.int64,
                              count=2 * m).reshape(m, 2)
            src = np.concatenate([arr[:, 0], arr[:, 1]])
            dst = np.concatenate([arr[:, 1], arr[:, 0]])
            order = np.lexsort((dst, src))
            src, dst = src[order], dst[order]
            self.indptr = np.zeros(n + 1, dtype=np.int64)
            np.add.at(self.indptr, src + 1, 1)
            np.cumsum(self.indptr, out=self.indptr)
            self.indices = dst
        else:
            self.indptr = np.zeros(n + 1, dtype=np.int64)
            self.indices = np.empty(0, dtype=np.int64)
        if labels is None:
            self.labels = np.arange(n, dtype=np.int64)
        else:
            self.labels = np.asarray(labels, dtype=np.int64)
            if self.labels.shape != (n,):
                raise ValueError("labels must have one entry per node")
        self._label_pos = None
        self._degrees = np.diff(self.indptr)

    @property
    def node_count(self):
        return self.n

    @property
    def edge_count(self):
        return int(self.indices.size // 2)

    def neighbors(self, u):
        """Sorted neighbor ids of u (a read-only array view)."""
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def degree(self, u):
        return int(self._degrees[u])

    @property
    def degrees(self):
        return self._degrees

    def edges(self):
        """Iterate undirected edges once each, as (u, v) with u < v."""
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < v:
                    yield u, int(v)

    def has_edge(self, u, v):
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < nb.size and nb[i] == v)

    def index_of(self, label):
        """Dense id for an original label (inverse of ``labels``)."""
        if self._label_pos is None:
            self._label_pos = {int(l): i for i, l in enumerate(self.labels)}
        return self._label_pos[int(label)]

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count})"


def load_edge_list(source):
    """Parse a whitespace-separated edge list into a Graph.

    ``source`` is a path or an iterable of lines.  Lines starting with '#'
    and blank lines are skipped.  Each remaining line must hold exactly two
    integer ids.  Ids are remapped to dense 0..n-1 in first-appearance order;
    directed inputs are symmetrized, duplicate edges and self-loops dropped.
    """
    if isinstance(source, (str, Path)):
        with open(source) as fh:
            return load_edge_list(fh)
    remap = {}
    edges = []
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise EdgeListError(
                f"line {lineno}: expected two node ids, got {len(parts)} tokens")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"line {lineno}: non-integer node id") from None
        for x in (a, b):
            if x not in remap:
                remap[x] = len(remap)
        edges.append((remap[a], remap[b]))
    if not remap:
        raise EdgeListError("empty graph")
    labels = np.empty(len(remap), dtype=np.int64)
    for orig, dense in remap.items():
        labels[dense] = orig
    return Graph(len(remap), edges, labels=labels)


@dataclass(frozen=True)
class ProbeTrace:
    """Per-step record of a probe run: (node, newly observed count) pairs."""

    steps: tuple
    total_new: int

    @classmethod
    def from_steps(cls, steps):
        steps = tuple((int(u), int(c)) for u, c in steps)
        return cls(steps, sum(c for _, c in steps))

    def nodes(self):
        return [u for u, _ in self.steps]

    def new_nodes_at(self, budget):
        """Cumulative newly observed nodes after the first ``budget`` probes."""
        return sum(c for _, c in self.steps[:budget])

    def __len__(self):
        return len(self.steps)


EMPTY_TRACE = ProbeTrace((), 0)


class IncompleteView:
    """Knowledge state of a prober over a ground-truth graph.

    Invariants: every gray node has a black neighbor; the observed edge set
    is exactly the ground-truth edges with at least one black endpoint (kept
    implicitly via colors, with an incrementally maintained edge counter).
    """

    __slots__ = ("graph", "color", "probes_used", "initially_observed",
                 "observed_edge_count")

    def __init__(self, graph, color, probes_used, initially_observed,
                 observed_edge_count):
        self.graph = graph
        self.color = color
        self.probes_used = probes_used
        self.initially_observed = initially_observed
        self.observed_edge_count = observed_edge_count

    def copy(self):
        return IncompleteView(self.graph, self.color.copy(), self.probes_used,
                              self.initially_observed, self.observed_edge_count)

    def is_gray(self, u):
        return self.color[u] == GRAY

    def gray_nodes(self):
        return np.flatnonzero(self.color == GRAY)

    def black_nodes(self):
        return np.flatnonzero(self.color == BLACK)

    def observed_nodes(self):
        return np.flatnonzero(self.color != WHITE)

    @property
    def observed_node_count(self):
        return int(np.count_nonzero(self.color != WHITE))

    @property
    def gray_count(self):
        return int(np.count_nonzero(self.color == GRAY))

    @property
    def black_count(self):
        return int(np.count_nonzero(self.color == BLACK))

    def observed_edges(self):
        """Materialize the observed edge set as (u, v) pairs with u < v."""
        out = set()
        for b in self.black_nodes():
            for v in self.graph.neighbors(b):
                out.add((b, int(v)) if b < v else (int(v), int(b)))
        return out

    def white_neighbor_count(self, u):
        """How many unobserved nodes probing u would reveal right now."""
        nbrs = self.graph.neighbors(u)
        return int(np.count_nonzero(self.color[nbrs] == WHITE))

    def probe(self, u):
        """Probe gray node u; returns the number of white->gray promotions."""
        u = int(u)
        if not (0 <= u < self.graph.n) or self.color[u] != GRAY:
            state = ("out of range" if not (0 <= u < self.graph.n)
                     else NodeColor(self.color[u]).name.lower())
            raise ProbeError(f"cannot probe node {u}: {state}")
        nbrs = self.graph.neighbors(u)
        nbr_colors = self.color[nbrs]
        # edges (u, v) with v already black were observed before this probe
        self.observed_edge_count += int(np.count_nonzero(nbr_colors != BLACK))
        self.color[u] = BLACK
        newly = nbrs[nbr_colors == WHITE]
        self.color[newly] = GRAY
        self.probes_used += 1
        return int(newly.size)


def make_initial_view(graph, seeds):
    """Build a view where ``seeds`` are black, their neighbors gray, rest white."""
    seeds = sorted({int(s) for s in seeds})
    if not seeds:
        raise ValueError("need at least one seed node")
    for s in seeds:
        if not (0 <= s < graph.n):
            raise ValueError(f"seed {s} out of range")
    color = np.full(graph.n, WHITE, dtype=np.uint8)
    for s in seeds:
        color[s] = BLACK
    # each seed-incident edge shows up once per endpoint's adjacency row;
    # count seed-seed edges from the smaller endpoint only
    edge_count = 0
    for s in seeds:
        for v in graph.neighbors(s):
            if color[v] == BLACK:
                if s < v:
                    edge_count += 1
            else:
                color[v] = GRAY
                edge_count += 1
    observed = int(np.count_nonzero(color != WHITE))
    return IncompleteView(graph, color, 0, observed, edge_count)


def evaluate_sequence(view, sequence):
    """Replay a probe sequence on a scratch copy and return its trace.

    Raises ProbeError naming the first infeasible position if some probe
    targets a node that is not gray at that point.
    """
    work = view.copy()
    steps = []
    for pos, u in enumerate(sequence):
        u = int(u)
        if not (0 <= u < work.graph.n) or work.color[u] != GRAY:
            raise ProbeError(
                f"sequence infeasible at position {pos}: node {u} not gray")
        steps.append((u, work.probe(u)))
    return ProbeTrace.from_steps(steps)
