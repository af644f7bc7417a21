"""Random instances, lambda sweeps, Pareto fronts, and CSV reporting."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigError, PreconditionError
from .maxian import (MaxianSolution, solve_balanced_2maxian_cubic,
                     solve_balanced_2maxian_linear)
from .median import MedianSolution, solve_balanced_2median
from .objectives import SolverConfig
from .tree import WeightedTree, _fmt, _sweep, split_by_edge

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK = 0xFFFFFFFFFFFFFFFF


class SplitMix64:
    """Deterministic 64-bit stream: the k-th output (k >= 1) is
    mix(seed + k*0x9E3779B97F4A7C15) where mix(z) is
    z ^= z>>30; z *= 0xBF58476D1CE4E5B9; z ^= z>>27;
    z *= 0x94D049BB133111EB; z ^= z>>31, all modulo 2^64.

    Stateless per position, so whole blocks vectorize; the instance only
    tracks how many outputs were consumed.  Integer draws use a plain
    modulo (bias is irrelevant here; cross-platform determinism is the
    contract)."""

    def __init__(self, seed: int):
        self._seed = np.uint64(int(seed) & _MASK)
        self._k = 0

    def raw(self, count: int) -> np.ndarray:
        ks = np.arange(self._k + 1, self._k + count + 1, dtype=np.uint64)
        self._k += count
        with np.errstate(over="ignore"):
            z = self._seed + ks * _GOLDEN
            z = (z ^ (z >> np.uint64(30))) * _MIX1
            z = (z ^ (z >> np.uint64(27))) * _MIX2
            z = z ^ (z >> np.uint64(31))
        return z

    def uniform(self, count: int) -> np.ndarray:
        """float64 values in [0, 1), 53-bit resolution."""
        return (self.raw(count) >> np.uint64(11)) * (2.0 ** -53)

    def integers(self, lo: int, hi: int, count: int) -> np.ndarray:
        """int64 values in [lo, hi], inclusive bounds."""
        span = np.uint64(hi - lo + 1)
        return (self.raw(count) % span).astype(np.int64) + lo


@dataclass(frozen=True)
class GenSpec:
    """Recipe for a random instance.

    weight_mode: "fixed" assigns w_i = 5, "uniform" draws w_i from [0, 5).
    service_mode: "fixed" assigns t_i = 1, "uniform" draws t_i from [0, 5).
    The default length_min of 0.01 keeps lengths strictly positive so the
    linear maxian method never needs its zero-length fallback; pass
    length_min=0 to allow the full [0, 5] range."""

    n: int
    seed: int
    length_min: float = 0.01
    length_max: float = 5.0
    weight_mode: str = "fixed"
    service_mode: str = "fixed"

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ConfigError(f"n must be a positive integer, got {self.n!r}")
        if not (0.0 <= self.length_min <= self.length_max):
            raise ConfigError("need 0 <= length_min <= length_max")
        if self.weight_mode not in ("fixed", "uniform"):
            raise ConfigError(f"unknown weight_mode {self.weight_mode!r}")
        if self.service_mode not in ("fixed", "uniform"):
            raise ConfigError(f"unknown service_mode {self.service_mode!r}")


def gen_random_tree(spec: GenSpec) -> WeightedTree:
    """Random recursive tree: vertex i (i >= 2) attaches to a uniformly
    random vertex in 1..i-1.  Draw order is fixed (parents, then lengths,
    then weights if uniform, then service times if uniform), so identical
    specs give identical instances on every platform."""
    n = spec.n
    g = SplitMix64(spec.seed)
    praw = g.raw(n - 1)
    lu = g.uniform(n - 1)
    if spec.weight_mode == "uniform":
        w = g.uniform(n) * 5.0
    else:
        w = np.full(n, 5.0)
    if spec.service_mode == "uniform":
        t = g.uniform(n) * 5.0
    else:
        t = np.ones(n)
    parents = (praw % np.arange(1, n, dtype=np.uint64)).astype(np.int64)
    ev = np.arange(1, n, dtype=np.int64)
    lengths = spec.length_min + lu * (spec.length_max - spec.length_min)
    return WeightedTree(n, parents, ev, lengths, w, t)


@dataclass(frozen=True)
class ExperimentRecord:
    """One solver run; transport holds f1 (median) or f2 (maxian)."""

    test_id: int
    n: int
    seed: int
    problem: str
    method: str
    lam: float
    transport: float
    f5: float
    objective: float
    edge_uv: tuple[int, int]
    facilities: tuple[int, int]
    runtime_ms: float

    def __post_init__(self):
        if self.problem == "median":
            expect = self.lam * self.transport + (1.0 - self.lam) * self.f5
        elif self.problem == "maxian":
            expect = self.lam * self.transport - (1.0 - self.lam) * self.f5
        else:
            raise ConfigError(f"unknown problem {self.problem!r}")
        if abs(expect - self.objective) > 1e-9 * (1.0 + abs(self.objective)):
            raise PreconditionError(
                f"record objective {self.objective} inconsistent with its "
                f"components ({expect} expected)")


def _solve(problem: str, method: str, cfg: SolverConfig, tree: WeightedTree):
    if problem == "median":
        return solve_balanced_2median(cfg, tree)
    if method == "cubic":
        return solve_balanced_2maxian_cubic(cfg, tree)
    return solve_balanced_2maxian_linear(cfg, tree)


def lambda_sweep(tree: WeightedTree, problem: str, lambdas: Iterable[float],
                 method: str = "linear", test_id: int = 0,
                 seed: int = 0) -> list[ExperimentRecord]:
    """One record per lambda value, using the fast solver for the problem
    (the linear method for maxian unless method="cubic" is asked for)."""
    if problem not in ("median", "maxian"):
        raise ConfigError(f"unknown problem {problem!r}")
    if method not in ("linear", "cubic"):
        raise ConfigError(f"unknown method {method!r}")
    records = []
    for lam in lambdas:
        cfg = SolverConfig(float(lam))
        t0 = time.perf_counter()
        sol = _solve(problem, method, cfg, tree)
        ms = (time.perf_counter() - t0) * 1e3
        if isinstance(sol, MedianSolution):
            records.append(ExperimentRecord(
                test_id, tree.n, seed, problem, "edge-deletion", cfg.lam,
                sol.f1, sol.f5, sol.objective, sol.edge_uv, sol.medians, ms))
        else:
            records.append(ExperimentRecord(
                test_id, tree.n, seed, problem, sol.method, cfg.lam,
                sol.f2, sol.f5, sol.objective, sol.edge_uv, sol.facilities, ms))
    return records


def pareto_front(tree: WeightedTree, problem: str,
                 grid_size: int) -> list[tuple[float, float]]:
    """Nondominated (transport, f5) pairs found by sweeping lambda over a
    uniform grid; sorted by transport.  Median minimizes both coordinates;
    maxian maximizes transport and minimizes f5."""
    if grid_size < 2:
        raise ConfigError("grid_size must be at least 2")
    points = set()
    for k in range(grid_size):
        cfg = SolverConfig(k / (grid_size - 1))
        sol = _solve(problem, "linear", cfg, tree)
        transport = sol.f1 if isinstance(sol, MedianSolution) else sol.f2
        points.add((transport, sol.f5))
    if problem == "median":
        def dominates(a, b):
            return a[0] <= b[0] and a[1] <= b[1] and a != b
    elif problem == "maxian":
        def dominates(a, b):
            return a[0] >= b[0] and a[1] <= b[1] and a != b
    else:
        raise ConfigError(f"unknown problem {problem!r}")
    front = [p for p in points
             if not any(dominates(q, p) for q in points if q != p)]
    return sorted(front)


def allocation_report(solution: MedianSolution | MaxianSolution,
                      tree: WeightedTree) -> int:
    """Number of vertices not served by their nearest facility (median) or
    not served by their farthest facility (maxian), strictly."""
    bip = split_by_edge(tree, solution.deleted_edge)
    if isinstance(solution, MedianSolution):
        serve_a, serve_b = solution.medians
        farthest = False
    else:
        x1, x2 = solution.facilities
        serve_a, serve_b = x2, x1
        farthest = True
    da = _sweep(tree, np.array([serve_a - 1], dtype=np.int64)).dist
    db = _sweep(tree, np.array([serve_b - 1], dtype=np.int64)).dist
    serving = np.where(bip._in_a, da, db)
    other = np.where(bip._in_a, db, da)
    if farthest:
        return int(np.count_nonzero(other > serving))
    return int(np.count_nonzero(other < serving))


CSV_HEADER = ("test,n,seed,problem,method,lambda,transport,f5,objective,"
              "edge_u,edge_v,fac1,fac2,runtime_ms")


def emit_csv(records: Sequence[ExperimentRecord], sink) -> None:
    """Write records in the fixed CSV schema; sink is a path or a text
    file-like.  Floats use shortest round-trip formatting; lines end in LF."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join([
            str(r.test_id), str(r.n), str(r.seed), r.problem, r.method,
            _fmt(r.lam), _fmt(r.transport), _fmt(r.f5), _fmt(r.objective),
            str(r.edge_uv[0]), str(r.edge_uv[1]),
            str(r.facilities[0]), str(r.facilities[1]),
            _fmt(r.runtime_ms),
        ]))
    text = "\n".join(lines) + "\n"
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
