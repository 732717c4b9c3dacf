import numpy as np
import pytest

from graphdirac import (
    Graph,
    adjacency_map,
    adjacency_norm_bounds,
    binary_tree_average_degree,
    build_binary_tree,
    build_cycle,
    build_path,
    build_random,
    coboundary_map,
    cycle_edge_vector,
    cycle_space_dims,
    degree_map,
    induced_subgraph,
    laplacian_map,
    operator_norm,
    power_iteration_norm,
    prefix_average_degrees,
    rational_rank,
    spectral_norm,
    truncation_norm_sequence,
)
from graphdirac.spectral import TruncationReport

from conftest import complete_graph, fixture_graphs, random_connected_graphs

TWO_SQRT2 = 2.0 * np.sqrt(2.0)


# --- spectral norm -------------------------------------------------------------

def test_norm_path2():
    assert spectral_norm(adjacency_map(build_path(2))) == pytest.approx(1.0, abs=1e-12)


def test_norm_complete_graph():
    # K_n adjacency has top eigenvalue n - 1
    assert spectral_norm(adjacency_map(complete_graph(5))) == pytest.approx(4.0, abs=1e-10)


def test_norm_cycle():
    # cycle eigenvalues are 2 cos(2 pi k / n)
    assert spectral_norm(adjacency_map(build_cycle(4))) == pytest.approx(2.0, abs=1e-10)
    g = build_cycle(7)
    assert spectral_norm(adjacency_map(g)) == pytest.approx(2.0, abs=1e-10)


def test_power_iteration_matches_dense():
    for g in random_connected_graphs(15, max_nodes=64, seed=6):
        A = adjacency_map(g)
        dense = spectral_norm(A, method="dense")
        power = spectral_norm(A, method="power")
        assert abs(dense - power) < 1e-8


def test_power_iteration_on_bipartite_pairs():
    # path graphs have +-lambda eigenvalue pairs; squaring keeps them in reach
    g = build_path(40)
    expected = 2.0 * np.cos(np.pi / 41.0)
    assert spectral_norm(adjacency_map(g), method="power") == pytest.approx(
        expected, abs=1e-9)


def test_power_iteration_reports_non_convergence():
    A = adjacency_map(build_path(50))
    res = power_iteration_norm(A, tol=1e-14, max_iter=3)
    assert not res.converged and res.iterations == 3
    with pytest.warns(RuntimeWarning):
        est = spectral_norm(A, method="power", tol=1e-14, max_iter=3)
    assert est > 0


def test_spectral_norm_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        spectral_norm(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_operator_norm_rectangular():
    rng = np.random.default_rng(2)
    for g in random_connected_graphs(10, max_nodes=12, seed=17):
        d = coboundary_map(g)
        expected = np.linalg.svd(d.toarray().astype(float), compute_uv=False)[0]
        assert operator_norm(d) == pytest.approx(expected, abs=1e-9)
        M = rng.standard_normal((7, 4))
        assert operator_norm(M) == pytest.approx(
            np.linalg.svd(M, compute_uv=False)[0], abs=1e-9)


def test_coboundary_norm_squared_is_laplacian_norm():
    # ||d||^2 = ||-2 Delta|| = 2 ||Delta||
    for g in fixture_graphs().values():
        nd = operator_norm(coboundary_map(g))
        n2 = spectral_norm(-2 * laplacian_map(g))
        assert abs(nd * nd - n2) < 1e-8
        assert abs(n2 - 2.0 * spectral_norm(laplacian_map(g))) < 1e-8


# --- degree bounds --------------------------------------------------------------

def test_bounds_collapse_on_regular_graph():
    b = adjacency_norm_bounds(complete_graph(5))
    assert b.lower == pytest.approx(4.0)
    assert b.upper == 4.0
    assert b.estimate == pytest.approx(4.0, abs=1e-10)


def test_bounds_binary_tree_upper():
    assert adjacency_norm_bounds(build_binary_tree(3)).upper == 3.0


def test_bounds_path10():
    b = adjacency_norm_bounds(build_path(10))
    assert b.lower == pytest.approx(1.8)            # best prefix is the full path
    assert b.estimate == pytest.approx(2.0 * np.cos(np.pi / 11.0), abs=1e-10)
    assert b.estimate < 2.0
    assert b.upper == 2.0


def test_prefix_averages_use_induced_degrees():
    # star: the full-graph hub degree must not leak into early prefixes
    g = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    avg = prefix_average_degrees(g)
    assert avg[0] == 0.0
    assert avg[-1] == pytest.approx(8.0 / 5.0)
    b = adjacency_norm_bounds(g)
    assert b.lower <= b.estimate <= b.upper


def test_bounds_sandwich_everywhere():
    graphs = list(fixture_graphs().values()) + random_connected_graphs(20, 20, seed=3)
    for g in graphs:
        b = adjacency_norm_bounds(g)
        assert b.lower <= b.estimate + 1e-8
        assert b.estimate <= b.upper + 1e-8


def test_laplacian_norm_bound():
    # ||-Delta|| <= v_max + ||A||
    for g in fixture_graphs().values():
        lhs = spectral_norm(laplacian_map(g))
        rhs = float(np.max(g.degrees)) + spectral_norm(adjacency_map(g))
        assert lhs <= rhs + 1e-8


# --- truncation sequences --------------------------------------------------------

def test_binary_tree_truncations_monotone_and_bounded():
    report = truncation_norm_sequence("binary_tree", range(1, 10))
    assert report.monotone
    assert all(x <= TWO_SQRT2 + 1e-9 for x in report.norms)
    # frozen from a dense eigensolver run
    assert report.norms[0] == pytest.approx(np.sqrt(2.0), abs=1e-9)
    assert report.norms[1] == pytest.approx(2.0, abs=1e-9)
    assert report.norms[2] == pytest.approx(2.288245611271, abs=1e-8)
    assert report.norms[4] == pytest.approx(2.548324784527, abs=1e-8)
    # cross-check every value against the dense oracle
    for depth, norm in zip(report.depths, report.norms):
        A = adjacency_map(build_binary_tree(depth)).toarray().astype(float)
        assert norm == pytest.approx(np.max(np.abs(np.linalg.eigvalsh(A))), abs=1e-8)


def test_path_truncations_approach_two_from_below():
    depths = [2, 4, 8, 16, 32, 64]
    report = truncation_norm_sequence("path", depths)
    assert report.monotone
    for n, norm in zip(depths, report.norms):
        assert norm == pytest.approx(2.0 * np.cos(np.pi / (n + 1)), abs=1e-8)
        assert norm < 2.0


def test_cycle_truncations_constant():
    report = truncation_norm_sequence("cycle", [3, 4, 5, 8])
    assert all(abs(x - 2.0) < 1e-9 for x in report.norms)


def test_truncation_validates_input():
    with pytest.raises(ValueError):
        truncation_norm_sequence("binary_tree", [])
    with pytest.raises(ValueError):
        truncation_norm_sequence("binary_tree", [3, 3])
    with pytest.raises(ValueError):
        truncation_norm_sequence("moebius", [1, 2])


def test_truncation_csv():
    report = TruncationReport("path", (2, 3), (2, 3), (1.0, 1.4142135), True)
    lines = report.to_csv().strip().splitlines()
    assert lines[0] == "depth,nodes,norm"
    assert lines[1].startswith("2,2,1")


def test_nested_minors_have_nondecreasing_norms():
    g = build_random(24, 0.35, seed=9)
    norms = []
    for prefix in (6, 12, 18, 24):
        sub, _ = induced_subgraph(g, range(prefix))
        norms.append(spectral_norm(adjacency_map(sub)))
    assert all(b >= a - 1e-9 for a, b in zip(norms, norms[1:]))


# --- average degree of tree truncations -------------------------------------------

def test_tree_average_degree_level_sum_identity():
    # with the root left out of the node count the ratio is exactly 2: the
    # degree sum of any tree is twice (nodes - 1)
    for levels in range(1, 16):
        assert binary_tree_average_degree(levels, count_root=False) == 2.0


def test_tree_average_degree_honest_limit():
    values = [binary_tree_average_degree(n) for n in range(1, 16)]
    assert values[0] == pytest.approx(4.0 / 3.0)
    assert all(b > a for a, b in zip(values, values[1:]))  # monotone in depth
    assert abs(values[9] - 2.0) < 0.05                     # close by depth 10
    assert all(v < 2.0 for v in values)


def test_tree_average_degree_validates():
    with pytest.raises(ValueError):
        binary_tree_average_degree(0)


# --- cycle space dimensions ---------------------------------------------------------

def test_cycle_space_path5():
    dims = cycle_space_dims(build_path(5))
    assert dims.rank_dstar == 4
    assert dims.kernel_dim == 8 - 4
    assert dims.components == 1


def test_cycle_space_disconnected():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    dims = cycle_space_dims(g)
    assert dims.components == 2
    assert dims.rank_dstar == 2      # n - c
    assert dims.kernel_dim == 4 - 2  # sum(v) - (n - c)


def test_cycle_space_cycle3_kernel():
    g = build_cycle(3)
    dims = cycle_space_dims(g)
    assert dims.rank_dstar == 2 and dims.kernel_dim == 4
    vec = cycle_edge_vector(g, [0, 1, 2])
    dstar = coboundary_map(g).adjoint()
    assert np.allclose(dstar.apply(np.asarray(vec)), 0.0, atol=1e-12)


def test_rank_matches_rational_oracle():
    for g in random_connected_graphs(10, max_nodes=10, seed=14):
        dstar = coboundary_map(g).adjoint().toarray()
        dims = cycle_space_dims(g)
        assert rational_rank(dstar) == dims.rank_dstar == g.node_count - 1
        assert dims.kernel_dim == int(g.degrees.sum()) - (g.node_count - 1)
