"""Observed-graph extraction and the candidate feature matrix."""

import numpy as np
import pytest

from probelab import (
    FEATURE_NAMES,
    Graph,
    feature_matrix,
    feature_vector,
    gnp_random_graph,
    make_initial_view,
    observed_graph,
)
from probelab import centrality as ct


def test_feature_names_fixed_order():
    assert FEATURE_NAMES == ("bc", "cc", "eig", "pr", "katz", "clc", "deg",
                             "bnum", "gnum", "bdeg", "bedg")


def test_observed_graph_hides_gray_gray_edges():
    # triangle of grays behind a black hub
    g = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3)])
    view = make_initial_view(g, [0])
    sub, nodes = observed_graph(view)
    assert list(nodes) == [0, 1, 2, 3]
    assert sub.edge_count == 3  # only hub edges are visible
    assert sorted(sub.edges()) == [(0, 1), (0, 2), (0, 3)]


def test_observed_graph_after_probe_reveals_edges():
    g = Graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    view = make_initial_view(g, [0])
    view.probe(2)
    sub, nodes = observed_graph(view)
    assert list(nodes) == [0, 1, 2, 3]
    assert sorted(sub.edges()) == [(0, 1), (0, 2), (1, 2), (2, 3)]


def test_observed_graph_matches_view_edge_counter():
    rng = np.random.default_rng(4)
    for _ in range(30):
        g = gnp_random_graph(int(rng.integers(4, 20)), 0.25, rng)
        view = make_initial_view(g, [int(rng.integers(g.n))])
        for _ in range(3):
            grays = view.gray_nodes()
            if grays.size == 0:
                break
            view.probe(int(grays[rng.integers(grays.size)]))
        sub, nodes = observed_graph(view)
        assert sub.edge_count == view.observed_edge_count
        assert np.array_equal(nodes, view.observed_nodes())


def test_feature_matrix_shape_and_global_columns():
    g = Graph(6, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (4, 5)])
    view = make_initial_view(g, [0, 1])
    nodes, mat = feature_matrix(view)
    assert np.array_equal(nodes, view.gray_nodes())
    assert mat.shape == (len(nodes), 11)
    bnum, gnum, bdeg, bedg = mat[0, 7:]
    assert bnum == 2 and gnum == len(nodes)
    # observed graph: edges 0-1, 0-2, 1-2, 1-3 -> black degs 2+3, 1 black edge
    assert bdeg == 5 and bedg == 1
    assert (mat[:, 7:] == mat[0, 7:]).all()  # globals identical per row


def test_feature_columns_match_centrality_on_observed_graph():
    rng = np.random.default_rng(8)
    for _ in range(15):
        g = gnp_random_graph(int(rng.integers(5, 16)), 0.3, rng)
        view = make_initial_view(g, [int(rng.integers(g.n))])
        grays = view.gray_nodes()
        if grays.size == 0:
            continue
        nodes, mat = feature_matrix(view)
        sub, sub_nodes = observed_graph(view)
        pos = {int(u): i for i, u in enumerate(sub_nodes)}
        idx = [pos[int(u)] for u in nodes]
        assert np.allclose(mat[:, 0], ct.betweenness(sub)[idx])
        assert np.allclose(mat[:, 1], ct.closeness(sub)[idx])
        assert np.allclose(mat[:, 2], ct.eigenvector(sub)[idx], atol=1e-7)
        assert np.allclose(mat[:, 3], ct.pagerank(sub)[idx], atol=1e-9)
        assert np.allclose(mat[:, 4], ct.katz(sub)[idx], atol=1e-9)
        assert np.allclose(mat[:, 5], ct.clustering(sub)[idx])
        assert np.allclose(mat[:, 6], ct.degree(sub)[idx])


def test_feature_vector_single_node():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    view = make_initial_view(g, [1])
    fv = feature_vector(view, 2)
    assert fv.deg == 1.0  # only the edge to black node 1 is visible
    assert fv.bnum == 1.0 and fv.gnum == 2.0
    arr = fv.as_array()
    assert arr.shape == (11,)


def test_feature_matrix_rejects_unobserved_nodes():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    view = make_initial_view(g, [0])
    with pytest.raises(ValueError, match="not observed"):
        feature_matrix(view, nodes=[3])


def test_white_information_never_leaks():
    """Features must be computable from the observed subgraph alone."""
    # same observed view, different hidden parts -> identical features
    g1 = Graph(5, [(0, 1), (0, 2), (1, 3), (3, 4)])
    g2 = Graph(6, [(0, 1), (0, 2), (1, 3), (3, 4), (3, 5), (4, 5)])
    v1 = make_initial_view(g1, [0])
    v2 = make_initial_view(g2, [0])
    n1, m1 = feature_matrix(v1, nodes=[1, 2])
    n2, m2 = feature_matrix(v2, nodes=[1, 2])
    assert np.array_equal(m1, m2)
