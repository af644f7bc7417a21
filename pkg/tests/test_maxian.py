import random
import warnings

import pytest

from treeloc import (PreconditionError, SolverConfig, brute_2maxian,
                     brute_path_fpmax, build_tree, compress_onto_path,
                     diameter, path_between, path_fpmax_sweep,
                     solve_balanced_2maxian_cubic,
                     solve_balanced_2maxian_linear)

from conftest import random_int_path, random_int_tree


def test_t6b_both_methods(t6b):
    cfg = SolverConfig(0.5)
    for solve in (solve_balanced_2maxian_cubic, solve_balanced_2maxian_linear):
        sol = solve(cfg, t6b)
        assert sol.objective == 12.0
        assert sol.edge_uv == (3, 4)
        assert sol.facilities == (1, 5)
        assert sol.f2 == 24.0
        assert sol.f5 == 0.0
    assert solve_balanced_2maxian_cubic(cfg, t6b).method == "cubic"
    assert solve_balanced_2maxian_linear(cfg, t6b).method == "linear"


def test_t6b_path_sweep_values(t6b):
    cfg = SolverConfig(0.5)
    cp = compress_onto_path(t6b, diameter(t6b))
    vals = path_fpmax_sweep(cfg, cp)
    assert vals == [(0, 10.0), (1, 11.5), (2, 12.0), (3, 7.0)]
    assert brute_path_fpmax(cfg, cp) == vals


def test_unit_path_sweep_values():
    tree = build_tree(4, [(1, 2), (2, 3), (3, 4)])
    cp = compress_onto_path(tree, path_between(tree, 1, 4))
    vals = path_fpmax_sweep(SolverConfig(0.5), cp)
    assert vals == [(0, 3.5), (1, 5.0), (2, 3.5)]
    tree3 = build_tree(3, [(1, 2), (2, 3)])
    cp3 = compress_onto_path(tree3, path_between(tree3, 1, 3))
    assert path_fpmax_sweep(SolverConfig(0.5), cp3) == [(0, 2.0), (1, 2.0)]


def test_sweep_needs_an_edge():
    tree = build_tree(1, [])
    cp = compress_onto_path(tree, path_between(tree, 1, 1))
    with pytest.raises(PreconditionError):
        path_fpmax_sweep(SolverConfig(0.5), cp)


def test_sweep_matches_direct_evaluation():
    rng = random.Random(883)
    for _ in range(30):
        tree = random_int_path(rng, rng.randint(2, 60))
        cp = compress_onto_path(tree, path_between(tree, 1, tree.n))
        for lam in (0.0, 0.25, 0.5, 0.75, 1.0):
            cfg = SolverConfig(lam)
            assert path_fpmax_sweep(cfg, cp) == brute_path_fpmax(cfg, cp)


def test_two_vertex_tree():
    tree = build_tree(2, [(1, 2)], lengths=[2.0])
    sol = solve_balanced_2maxian_linear(SolverConfig(0.5), tree)
    assert sol.objective == 2.0
    assert sol.f2 == 4.0
    assert sol.f5 == 0.0
    assert sol.facilities == (1, 2)


def test_needs_two_vertices():
    tree = build_tree(1, [])
    with pytest.raises(PreconditionError):
        solve_balanced_2maxian_linear(SolverConfig(0.5), tree)
    with pytest.raises(PreconditionError):
        solve_balanced_2maxian_cubic(SolverConfig(0.5), tree)


def test_zero_length_edge_falls_back_to_cubic():
    tree = build_tree(4, [(1, 2), (2, 3), (3, 4)], lengths=[1.0, 0.0, 1.0])
    with pytest.warns(RuntimeWarning):
        sol = solve_balanced_2maxian_linear(SolverConfig(0.5), tree)
    assert sol.method == "cubic"
    ref = solve_balanced_2maxian_cubic(SolverConfig(0.5), tree)
    assert sol.objective == ref.objective


def test_positive_lengths_take_linear_route(t6b):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        sol = solve_balanced_2maxian_linear(SolverConfig(0.5), t6b)
    assert sol.method == "linear"


def test_cubic_matches_brute_force():
    rng = random.Random(7201)
    for _ in range(30):
        tree = random_int_tree(rng, rng.randint(3, 10))
        for lam in (0.0, 0.3, 0.7, 1.0):
            cfg = SolverConfig(lam)
            fast = solve_balanced_2maxian_cubic(cfg, tree)
            slow = brute_2maxian(cfg, tree)
            assert fast.objective == slow.objective
            assert fast.deleted_edge == slow.deleted_edge
            assert fast.facilities == slow.facilities


def test_linear_equals_cubic_at_pure_maxian():
    rng = random.Random(7301)
    cfg = SolverConfig(1.0)
    for _ in range(60):
        tree = random_int_tree(rng, rng.randint(3, 14))
        a = solve_balanced_2maxian_linear(cfg, tree)
        b = solve_balanced_2maxian_cubic(cfg, tree)
        assert a.objective == b.objective


def test_objective_recomposes(t6b):
    for lam in (0.0, 0.25, 0.5, 0.75, 1.0):
        sol = solve_balanced_2maxian_linear(SolverConfig(lam), t6b)
        assert sol.objective == lam * sol.f2 - (1.0 - lam) * sol.f5
