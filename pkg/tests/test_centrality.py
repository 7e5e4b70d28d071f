"""Centrality scores against independent brute-force / dense oracles."""

import numpy as np
import pytest

from probelab import Graph, gnp_random_graph
from probelab import centrality as ct
from probelab import oracles


def _random_graphs(count, n_max, p, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield gnp_random_graph(int(rng.integers(2, n_max + 1)), p, rng)


# hand-checked fixtures ------------------------------------------------------

def test_betweenness_path_graph():
    # P4: inner nodes lie on 2 shortest paths each (1-3 via 2? no: pairs
    # (0,2),(0,3) pass through 1; (0,3),(1,3) through 2)
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert np.allclose(ct.betweenness(g), [0, 2, 2, 0])


def test_betweenness_star_and_cycle():
    star = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    # hub carries all C(4,2) = 6 pairs
    assert np.allclose(ct.betweenness(star), [6, 0, 0, 0, 0])
    c5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    # each distance-2 pair has a unique shortest path through one node
    assert np.allclose(ct.betweenness(c5), [1.0] * 5)


def test_closeness_star():
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    cc = ct.closeness(g)
    assert cc[0] == pytest.approx(1.0)  # distance 1 to everyone
    assert np.allclose(cc[1:], (4 / 7) * 1.0)


def test_closeness_handles_disconnection():
    g = Graph(4, [(0, 1), (2, 3)])
    cc = ct.closeness(g)
    # reachable-set scaling: (r-1)/sumd * (r-1)/(n-1) with r=2
    assert np.allclose(cc, [1 / 3] * 4)
    lone = Graph(2, [])
    assert np.allclose(ct.closeness(lone), [0, 0])


def test_clustering_triangle_plus_tail():
    g = Graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    clc = ct.clustering(g)
    assert clc[0] == pytest.approx(1.0)
    assert clc[1] == pytest.approx(1.0)
    assert clc[2] == pytest.approx(1 / 3)
    assert clc[3] == 0.0  # degree < 2


def test_pagerank_sums_to_one_and_ranks_hub_first():
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)])
    pr = ct.pagerank(g)
    assert pr.sum() == pytest.approx(1.0, abs=1e-9)
    assert pr[0] == pr.max()


def test_eigenvector_is_unit_norm_fixed_point():
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
    x = ct.eigenvector(g)
    assert np.linalg.norm(x) == pytest.approx(1.0)
    lam = ct.lambda_max(g)
    A = np.zeros((6, 6))
    for u, v in g.edges():
        A[u, v] = A[v, u] = 1
    assert np.allclose(A @ x, lam * x, atol=1e-6)


def test_katz_closed_form_on_path():
    g = Graph(3, [(0, 1), (1, 2)])
    alpha = ct.katz_alpha(ct.lambda_max(g))
    x = ct.katz(g)
    A = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], float)
    expected = np.linalg.solve(np.eye(3) - alpha * A, np.ones(3))
    assert np.allclose(x, expected, atol=1e-8)


def test_degree_matches_graph_degrees():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    assert np.array_equal(ct.degree(g), [3, 2, 3, 2])


def test_components_labels_partition():
    g = Graph(7, [(0, 1), (1, 2), (3, 4), (5, 6)])
    labels, count = ct.components(g)
    assert count == 3
    assert labels[0] == labels[1] == labels[2]
    assert labels[3] == labels[4]
    assert labels[5] == labels[6]
    assert len({labels[0], labels[3], labels[5]}) == 3


# oracle sweeps --------------------------------------------------------------

def test_betweenness_matches_exact_rational_oracle():
    for g in _random_graphs(60, 9, 0.4, seed=10):
        got = ct.betweenness(g)
        want, _ = oracles.brute_betweenness(g)
        assert np.allclose(got, want, atol=1e-9), g.edges()


def test_closeness_matches_brute_force():
    for g in _random_graphs(60, 9, 0.35, seed=11):
        assert np.array_equal(ct.closeness(g), oracles.brute_closeness(g))


def test_clustering_matches_brute_force():
    for g in _random_graphs(60, 9, 0.45, seed=12):
        assert np.array_equal(ct.clustering(g), oracles.brute_clustering(g))


def test_eigenvector_matches_dense_oracle():
    for g in _random_graphs(40, 9, 0.4, seed=13):
        got = ct.eigenvector(g)
        want = oracles.dense_eigenvector(g)
        assert np.allclose(got, want, atol=1e-6), g.edges()


def test_pagerank_matches_dense_solve():
    for g in _random_graphs(40, 9, 0.35, seed=14):
        got = ct.pagerank(g)
        want = oracles.dense_pagerank(g)
        assert np.allclose(got, want, atol=1e-6)
        assert got.sum() == pytest.approx(1.0, abs=1e-9)


def test_katz_matches_dense_solve():
    for g in _random_graphs(40, 9, 0.4, seed=15):
        got = ct.katz(g)
        want = oracles.dense_katz(g)
        assert np.allclose(got, want, atol=1e-6)


def test_lambda_max_matches_dense():
    for g in _random_graphs(30, 9, 0.4, seed=16):
        assert ct.lambda_max(g) == pytest.approx(
            oracles.dense_lambda_max(g), abs=1e-6)
