"""Graph container, edge-list loading, and probe semantics."""

import io

import numpy as np
import pytest

from probelab import (
    BLACK,
    GRAY,
    WHITE,
    EdgeListError,
    Graph,
    ProbeError,
    ProbeTrace,
    evaluate_sequence,
    load_edge_list,
    make_initial_view,
)
from probelab.oracles import recompute_view


def test_graph_canonicalizes_edges():
    g = Graph(4, [(0, 1), (1, 0), (2, 2), (1, 2), (1, 2), (3, 1)])
    assert g.n == 4
    assert g.edge_count == 3  # dedup + self loop dropped
    assert list(g.neighbors(1)) == [0, 2, 3]
    assert g.degree(1) == 3
    assert g.has_edge(2, 1) and not g.has_edge(0, 2)
    assert sorted(g.edges()) == [(0, 1), (1, 2), (1, 3)]


def test_graph_rejects_empty_and_bad_nodes():
    with pytest.raises(ValueError):
        Graph(0, [])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])


def test_degrees_match_adjacency():
    rng = np.random.default_rng(0)
    for _ in range(20):
        n = int(rng.integers(2, 12))
        pairs = [(int(rng.integers(n)), int(rng.integers(n)))
                 for _ in range(n)]
        g = Graph(n, pairs)
        for u in range(n):
            assert g.degree(u) == len(list(g.neighbors(u)))
        assert int(g.degrees.sum()) == 2 * g.edge_count


def test_load_edge_list_remaps_labels():
    text = """# comment line
    10 20

    20 30
    10 30
    """
    g = load_edge_list(io.StringIO(text))
    assert g.n == 3 and g.edge_count == 3
    assert list(g.labels) == [10, 20, 30]
    assert g.index_of(30) == 2


def test_load_edge_list_errors():
    with pytest.raises(EdgeListError, match="line 1"):
        load_edge_list(io.StringIO("1 2 3\n"))
    with pytest.raises(EdgeListError, match="line 2"):
        load_edge_list(io.StringIO("1 2\na b\n"))
    with pytest.raises(EdgeListError, match="empty"):
        load_edge_list(io.StringIO("# nothing\n"))


def test_initial_view_colors_and_edges():
    # star with an extra rim edge; seed at the hub
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)])
    view = make_initial_view(g, [0])
    assert view.color[0] == BLACK
    assert all(view.color[u] == GRAY for u in (1, 2, 3, 4))
    # the rim edge 1-2 is invisible: neither endpoint is black
    assert view.observed_edge_count == 4
    assert sorted(view.observed_edges()) == [(0, 1), (0, 2), (0, 3), (0, 4)]


def test_initial_view_counts_seed_seed_edges_once():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    view = make_initial_view(g, [0, 1])
    assert view.observed_edge_count == 2  # 0-1 once, 1-2 once
    assert view.color[2] == GRAY and view.color[3] == WHITE


def test_probe_promotes_and_returns_new_gray_count():
    g = Graph(6, [(0, 1), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)])
    view = make_initial_view(g, [0])
    assert view.probe(1) == 2  # 2 and 3 newly gray
    assert view.color[1] == BLACK
    assert view.color[2] == GRAY and view.color[3] == GRAY
    assert view.color[4] == WHITE
    assert view.probe(3) == 1  # only 4 (2 already gray)
    assert view.probes_used == 2


def test_probe_rejects_non_gray():
    g = Graph(3, [(0, 1), (1, 2)])
    view = make_initial_view(g, [0])
    with pytest.raises(ProbeError, match="black"):
        view.probe(0)
    with pytest.raises(ProbeError, match="white"):
        view.probe(2)
    with pytest.raises(ProbeError):
        view.probe(17)


def test_probe_matches_full_recomputation():
    """Incremental color/edge bookkeeping equals from-scratch rebuild."""
    rng = np.random.default_rng(42)
    for _ in range(60):
        n = int(rng.integers(3, 15))
        pairs = [(int(rng.integers(n)), int(rng.integers(n)))
                 for _ in range(2 * n)]
        g = Graph(n, pairs)
        seeds = sorted({int(x) for x in rng.integers(0, n, size=2)})
        view = make_initial_view(g, seeds)
        probed = []
        while view.gray_count and len(probed) < 5:
            grays = view.gray_nodes()
            u = int(grays[rng.integers(grays.size)])
            got = view.probe(u)
            probed.append(u)
            colors, edges, counts = recompute_view(g, seeds, probed)
            assert np.array_equal(colors, view.color)
            assert edges == view.observed_edge_count
            assert counts[-1] == got


def test_view_copy_is_independent():
    g = Graph(3, [(0, 1), (1, 2)])
    view = make_initial_view(g, [0])
    other = view.copy()
    other.probe(1)
    assert view.color[1] == GRAY
    assert view.probes_used == 0 and other.probes_used == 1


def test_trace_prefix_counts():
    trace = ProbeTrace.from_steps([(5, 3), (7, 0), (2, 4)])
    assert trace.total_new == 7
    assert trace.nodes() == [5, 7, 2]
    assert trace.new_nodes_at(0) == 0
    assert trace.new_nodes_at(1) == 3
    assert trace.new_nodes_at(2) == 3
    assert trace.new_nodes_at(3) == 7
    assert trace.new_nodes_at(99) == 7
    assert len(trace) == 3


def test_evaluate_sequence_matches_manual_probes():
    g = Graph(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)])
    view = make_initial_view(g, [0])
    trace = evaluate_sequence(view, [1, 3, 4])
    assert trace.total_new == 4
    assert view.probes_used == 0  # input view untouched
    with pytest.raises(ProbeError, match="position 0"):
        evaluate_sequence(view, [4])
