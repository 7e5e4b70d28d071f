"""LP text build/format/parse round trip and solver cross-check."""

import io

import numpy as np
import pytest

from probelab import (
    Graph,
    LPParseError,
    build_probe_ilp,
    exact_optimal,
    export_ilp,
    format_lp,
    gnp_random_graph,
    make_initial_view,
    parse_lp,
    solve_lp,
)
from probelab.sampling import gen_hardness


def _counts(view, k):
    # one collapsed root plus every non-black node
    n = view.graph.n - view.black_count + 1
    return n, n * (k + 1) + n, 2 * n * k + 2 * n + 1


def test_variable_and_constraint_counts():
    rng = np.random.default_rng(2)
    for _ in range(25):
        g = gnp_random_graph(int(rng.integers(3, 12)), 0.3, rng)
        view = make_initial_view(g, [int(rng.integers(g.n))])
        k = int(rng.integers(0, 4))
        prob = build_probe_ilp(view, k)
        _, nvars, ncons = _counts(view, k)
        assert len(prob.variables()) == nvars
        assert len(prob.constraints) == ncons
        assert len(prob.binaries) == nvars


def test_counts_on_multi_seed_views():
    g = gnp_random_graph(10, 0.4, np.random.default_rng(3))
    view = make_initial_view(g, [0, 3, 7])
    view_probe = view.copy()
    grays = view_probe.gray_nodes()
    if grays.size:
        view_probe.probe(int(grays[0]))
    for v, k in ((view, 2), (view_probe, 3)):
        prob = build_probe_ilp(v, k)
        _, nvars, ncons = _counts(v, k)
        assert len(prob.variables()) == nvars
        assert len(prob.constraints) == ncons


def test_format_parse_round_trip_preserves_problem():
    g = Graph(6, [(0, 1), (0, 2), (1, 3), (2, 4), (4, 5)])
    view = make_initial_view(g, [0])
    prob = build_probe_ilp(view, 2)
    text = format_lp(prob)
    back = parse_lp(text)
    assert back.sense == prob.sense
    assert back.objective == prob.objective
    assert back.constant == prob.constant
    assert sorted(back.binaries) == sorted(prob.binaries)
    assert len(back.constraints) == len(prob.constraints)
    by_name = {c.name: c for c in back.constraints}
    for con in prob.constraints:
        other = by_name[con.name]
        assert other.coeffs == con.coeffs
        assert other.sense == con.sense
        assert other.rhs == pytest.approx(con.rhs)


def test_lp_text_shape():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    view = make_initial_view(g, [0])
    text = format_lp(build_probe_ilp(view, 1))
    lines = text.splitlines()
    assert any(line.startswith("Maximize") for line in lines)
    assert any(line.strip() == "Subject To" for line in lines)
    assert any(line.startswith("Binaries") for line in lines)
    assert lines[-1] == "End"
    assert all(len(line) <= 80 for line in lines)


def test_parse_tolerates_comments_and_case():
    text = """\\ a comment
minimise
 cost: 2 x + 3.5 y - z
subject to
 a: x + y >= 1
 - z + 2 x <= 4
 b: y = 0.5
BIN
 x y z
End
"""
    prob = parse_lp(text)
    assert prob.sense == "minimize"
    assert prob.objective == {"x": 2.0, "y": 3.5, "z": -1.0}
    senses = [c.sense for c in prob.constraints]
    assert senses == [">=", "<=", "="]
    assert prob.constraints[1].coeffs == {"z": -1.0, "x": 2.0}
    assert prob.constraints[2].rhs == 0.5
    assert prob.binaries == ["x", "y", "z"]


def test_parse_moves_lhs_constants_to_rhs():
    prob = parse_lp("Maximize\n x\nSubject To\n c: x + 3 <= 5\nEnd\n")
    assert prob.constraints[0].rhs == 2.0


def test_parse_errors():
    with pytest.raises(LPParseError):
        parse_lp("Subject To\n x <= 1\nEnd\n")  # no objective
    with pytest.raises(LPParseError):
        parse_lp("Maximize\n x\nSubject To\n x <=\nEnd\n")  # missing rhs
    with pytest.raises(LPParseError):
        parse_lp("nonsense before sections\nMaximize\n x\nEnd\n")


def test_solver_matches_exhaustive_search():
    rng = np.random.default_rng(12)
    done = 0
    for _ in range(60):
        g = gnp_random_graph(int(rng.integers(3, 9)), 0.4, rng)
        view = make_initial_view(g, [int(rng.integers(g.n))])
        k = int(rng.integers(1, 4))
        value, assign = solve_lp(parse_lp(format_lp(build_probe_ilp(view, k))))
        assert value == pytest.approx(exact_optimal(view, k).opt_value)
        done += 1
    assert done == 60


def test_solver_on_hardness_instance():
    inst = gen_hardness(6, 4, 2)
    value, assign = solve_lp(parse_lp(format_lp(build_probe_ilp(inst.view, 1))))
    assert value == pytest.approx(4)
    # the chosen probe is g_star at layer 1
    assert assign[f"x_{inst.g_star}_1"] == pytest.approx(1)


def test_budget_zero_objective_zero():
    g = Graph(5, [(0, 1), (0, 2), (1, 3), (3, 4)])
    view = make_initial_view(g, [0])
    value, _ = solve_lp(parse_lp(format_lp(build_probe_ilp(view, 0))))
    assert value == pytest.approx(0)


def test_export_ilp_writes_file_and_accepts_handles(tmp_path):
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    view = make_initial_view(g, [0])
    path = tmp_path / "probe.lp"
    prob = export_ilp(view, 2, path)
    text = path.read_text()
    assert parse_lp(text).objective == prob.objective
    buf = io.StringIO()
    export_ilp(view, 2, buf)
    assert buf.getvalue() == text
