import io
import random

import numpy as np
import pytest

from conftest import random_int_tree
from treeloc import (ConfigError, ExperimentRecord, GenSpec, MaxianSolution,
                     PreconditionError, SolverConfig, SplitMix64,
                     allocation_report, build_tree, emit_csv, gen_random_tree,
                     lambda_sweep, pareto_front, parse_tree, render_tree,
                     solve_balanced_2maxian_cubic, solve_balanced_2median)

MASK = (1 << 64) - 1


def _mix_reference(seed, k):
    """Pure-integer SplitMix64 output k (k >= 1), written without numpy so
    the vectorized implementation is checked against an independent route."""
    z = (seed + k * 0x9E3779B97F4A7C15) & MASK
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & MASK
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & MASK
    z ^= z >> 31
    return z


def test_splitmix_matches_integer_reference():
    for seed in (0, 1, 42, 2**63, MASK):
        got = list(SplitMix64(seed).raw(20))
        want = [_mix_reference(seed, k) for k in range(1, 21)]
        assert [int(x) for x in got] == want


def test_splitmix_stream_is_positional():
    g = SplitMix64(99)
    first = list(g.raw(5)) + list(g.raw(5))
    assert first == list(SplitMix64(99).raw(10))


def test_splitmix_uniform_and_integers():
    u = SplitMix64(7).uniform(5000)
    assert u.min() >= 0.0 and u.max() < 1.0
    iv = SplitMix64(9).integers(1, 5, 5000)
    assert iv.min() == 1 and iv.max() == 5
    assert set(np.unique(iv)) == {1, 2, 3, 4, 5}


def test_genspec_validation():
    with pytest.raises(ConfigError):
        GenSpec(0, 1)
    with pytest.raises(ConfigError):
        GenSpec(5, 1, length_min=3.0, length_max=1.0)
    with pytest.raises(ConfigError):
        GenSpec(5, 1, weight_mode="gauss")
    with pytest.raises(ConfigError):
        GenSpec(5, 1, service_mode="gauss")


def test_gen_is_deterministic():
    spec = GenSpec(100, 42)
    assert render_tree(gen_random_tree(spec)) == \
        render_tree(gen_random_tree(spec))


def test_gen_round_trips_through_parser():
    tree = gen_random_tree(GenSpec(100, 42))
    text = render_tree(tree)
    again = parse_tree(text)
    assert again.n == 100
    assert render_tree(again) == text


def test_gen_single_vertex():
    tree = gen_random_tree(GenSpec(1, 3))
    assert tree.n == 1
    assert tree.eu.size == 0


def test_gen_draw_layout_is_stable():
    # weights are drawn after parents and lengths, so switching weight mode
    # must not disturb the topology
    a = gen_random_tree(GenSpec(30, 5, weight_mode="fixed"))
    b = gen_random_tree(GenSpec(30, 5, weight_mode="uniform"))
    assert np.array_equal(a.eu, b.eu)
    assert np.array_equal(a.ev, b.ev)
    assert np.array_equal(a.length, b.length)
    assert not np.array_equal(a.w, b.w)


def test_gen_modes():
    tree = gen_random_tree(GenSpec(50, 8))
    assert np.all(tree.w == 5.0)
    assert np.all(tree.t == 1.0)
    assert tree.length.min() >= 0.01 and tree.length.max() <= 5.0
    tree = gen_random_tree(GenSpec(50, 8, service_mode="uniform"))
    assert np.all((tree.t >= 0) & (tree.t < 5))


def test_lambda_sweep_t6(t6):
    recs = lambda_sweep(t6, "median", [0.0, 0.5, 1.0])
    assert [r.objective for r in recs] == [0.0, 2.5, 4.0]
    assert [r.lam for r in recs] == [0.0, 0.5, 1.0]
    assert recs[1].transport == 5.0 and recs[1].f5 == 0.0
    assert recs[0].f5 == 0.0
    assert all(r.method == "edge-deletion" for r in recs)
    assert all(r.runtime_ms >= 0.0 for r in recs)


def test_lambda_sweep_t6b_maxian(t6b):
    recs = lambda_sweep(t6b, "maxian", [0.5])
    assert len(recs) == 1
    assert recs[0].objective == 12.0
    assert recs[0].method == "linear"
    cub = lambda_sweep(t6b, "maxian", [0.5], method="cubic")
    assert cub[0].objective == 12.0
    assert cub[0].method == "cubic"


def test_lambda_sweep_empty(t6):
    assert lambda_sweep(t6, "median", []) == []


def test_lambda_sweep_validation(t6):
    with pytest.raises(ConfigError):
        lambda_sweep(t6, "mean", [0.5])
    with pytest.raises(ConfigError):
        lambda_sweep(t6, "median", [0.5], method="quartic")
    with pytest.raises(ConfigError):
        lambda_sweep(t6, "median", [1.5])


def test_record_consistency_check():
    with pytest.raises(PreconditionError):
        ExperimentRecord(0, 6, 0, "median", "edge-deletion", 0.5,
                         5.0, 0.0, 99.0, (3, 4), (2, 4), 0.0)
    with pytest.raises(ConfigError):
        ExperimentRecord(0, 6, 0, "mediam", "edge-deletion", 0.5,
                         5.0, 0.0, 2.5, (3, 4), (2, 4), 0.0)


def test_pareto_t6(t6):
    pts = pareto_front(t6, "median", 11)
    assert pts == [(4.0, 2.0), (5.0, 0.0)]


def test_pareto_single_edge_tree():
    tree = build_tree(2, [(1, 2)])
    assert len(pareto_front(tree, "median", 5)) == 1


def test_pareto_is_nondominated():
    rng = random.Random(61)
    for problem in ("median", "maxian"):
        tree = random_int_tree(rng, 15)
        pts = pareto_front(tree, problem, 9)
        assert pts == sorted(pts)
        for p in pts:
            for q in pts:
                if p == q:
                    continue
                if problem == "median":
                    assert not (q[0] <= p[0] and q[1] <= p[1])
                else:
                    assert not (q[0] >= p[0] and q[1] <= p[1])
    with pytest.raises(ConfigError):
        pareto_front(tree, "median", 1)


def test_allocation_report_median(t6):
    sol = solve_balanced_2median(SolverConfig(0.5), t6)
    assert allocation_report(sol, t6) == 1
    sol = solve_balanced_2median(SolverConfig(1.0), t6)
    assert allocation_report(sol, t6) == 0


def test_allocation_report_maxian(t6b):
    sol = solve_balanced_2maxian_cubic(SolverConfig(0.5), t6b)
    assert sol.facilities == (1, 5)
    assert allocation_report(sol, t6b) == 1
    # the tied optimum with facilities {v1, v6} deviates at v3 as well
    alt = MaxianSolution(2, (3, 4), (1, 6), 24.0, 0.0, 12.0, "cubic")
    assert allocation_report(alt, t6b) == 1


def test_emit_csv_shapes(t6):
    buf = io.StringIO()
    emit_csv([], buf)
    assert buf.getvalue() == ("test,n,seed,problem,method,lambda,transport,"
                              "f5,objective,edge_u,edge_v,fac1,fac2,"
                              "runtime_ms\n")
    buf = io.StringIO()
    emit_csv(lambda_sweep(t6, "median", [0.5]), buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 2
    parts = lines[1].split(",")
    assert parts[3] == "median" and parts[5] == "0.5"
    assert float(parts[8]) == 2.5


def test_emit_csv_table_shape():
    recs = []
    for i in range(10):
        tree = gen_random_tree(GenSpec(41, 100 + i))
        recs += lambda_sweep(tree, "median", [0.0, 0.2, 0.5, 1.0],
                             test_id=i, seed=100 + i)
    buf = io.StringIO()
    emit_csv(recs, buf)
    text = buf.getvalue()
    assert len(text.splitlines()) == 41
    assert "\r" not in text


def test_csv_floats_round_trip(t6b):
    recs = lambda_sweep(t6b, "maxian", [1 / 3])
    buf = io.StringIO()
    emit_csv(recs, buf)
    row = buf.getvalue().splitlines()[1].split(",")
    assert float(row[5]) == recs[0].lam
    assert float(row[6]) == recs[0].transport
    assert float(row[8]) == recs[0].objective
    assert float(row[13]) == recs[0].runtime_ms
