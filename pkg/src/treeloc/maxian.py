"""Balanced 2-maxian solvers.

Two routes: a cubic-semantics reference that scores every edge deletion
against every ordered facility pair under masked weights, and a linear
method that fixes facilities at the diameter endpoints and sweeps the
deletions along the diameter path with an incremental recurrence.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .objectives import SolverConfig
from .tree import (CompressedPath, Sweep, WeightedTree, _sweep,
                   compress_onto_path, diameter, split_by_edge)


@dataclass(frozen=True, eq=False)
class MaxianSolution:
    """deleted_edge is the 0-based input edge index, edge_uv its 1-based
    endpoints.  facilities = (x1, x2): x1 serves the side containing the
    larger endpoint of the deleted edge, x2 the other side.  objective =
    lam*f2 - (1-lam)*f5.  method records which algorithm produced it."""

    deleted_edge: int
    edge_uv: tuple[int, int]
    facilities: tuple[int, int]
    f2: float
    f5: float
    objective: float
    method: str


def _dist_sums(tree: WeightedTree, wm: np.ndarray, s0: Sweep) -> np.ndarray:
    """S[x] = sum_v wm[v] * d(v, x) for every vertex x.

    Reroot dynamic program over the traversal s0: subtree masses and costs
    accumulate bottom-up, then S propagates top-down with
    S[child] = S[parent] + (Wm - 2*mass_below) * edge length.
    """
    order, levels, parent, pedge = s0.order, s0.levels, s0.parent, s0.pedge
    length = tree.length
    sub = np.asarray(wm, dtype=np.float64).copy()
    acc = np.zeros(tree.n)
    bounds = np.cumsum(levels)
    for k in range(levels.size - 1, 0, -1):
        chunk = order[bounds[k - 1]:bounds[k]]
        par = parent[chunk]
        ln = length[pedge[chunk]]
        np.add.at(acc, par, acc[chunk] + sub[chunk] * ln)
        np.add.at(sub, par, sub[chunk])
    root = int(order[0])
    Wm = float(sub[root])
    S = np.zeros(tree.n)
    S[root] = acc[root]
    for k in range(1, levels.size):
        chunk = order[bounds[k - 1]:bounds[k]]
        S[chunk] = S[parent[chunk]] + (Wm - 2.0 * sub[chunk]) * length[pedge[chunk]]
    return S


def _best_pair(A: np.ndarray, B: np.ndarray) -> tuple[int, int, float]:
    """Maximize A[x1] + B[x2] over ordered pairs x1 != x2; among maximizers
    return the lexicographically smallest pair.  np.argmax takes the first
    maximum, so each side's argmax is already its smallest maximizing id;
    only a shared argmax needs the two runner-up candidates compared."""
    a1 = int(np.argmax(A))
    b1 = int(np.argmax(B))
    if a1 != b1:
        return a1, b1, float(A[a1] + B[b1])
    q = a1
    A2 = A.copy()
    A2[q] = -np.inf
    a2 = int(np.argmax(A2))
    B2 = B.copy()
    B2[q] = -np.inf
    b2 = int(np.argmax(B2))
    v1 = float(A[q] + B2[b2])
    v2 = float(A2[a2] + B[q])
    if v1 > v2:
        return q, b2, v1
    if v2 > v1:
        return a2, q, v2
    return (q, b2, v1) if (q, b2) < (a2, q) else (a2, q, v2)


def solve_balanced_2maxian_cubic(cfg: SolverConfig, tree: WeightedTree) -> MaxianSolution:
    """Reference method: for every edge deletion, score every ordered
    facility pair (x1 anywhere, serving the larger-endpoint side through
    masked weights; x2 serving the other side) and keep the maximizer.
    Ties go to the smallest edge index, then the smallest facility pair.
    """
    if tree.n < 2:
        raise PreconditionError("balanced 2-maxian needs at least 2 vertices")
    lam = cfg.lam
    s0 = _sweep(tree, np.array([0], dtype=np.int64))
    best = None
    for e in range(tree.n - 1):
        bip = split_by_edge(tree, e)
        in_a = bip._in_a
        A = _dist_sums(tree, np.where(in_a, 0.0, tree.w), s0)
        B = _dist_sums(tree, np.where(in_a, tree.w, 0.0), s0)
        f5 = abs(bip.z_a - bip.z_b)
        x1, x2, f2 = _best_pair(A, B)
        obj = lam * f2 - (1.0 - lam) * f5
        if best is None or obj > best[0]:
            best = (obj, e, x1 + 1, x2 + 1, f2, f5)
    obj, e, x1, x2, f2, f5 = best
    return MaxianSolution(e, tree.edge_tuple(e), (x1, x2), f2, f5, obj, "cubic")


def path_fpmax_sweep(cfg: SolverConfig, cp: CompressedPath) -> list[tuple[int, float]]:
    """Objective of every path-edge deletion with facilities fixed at the
    path endpoints (each endpoint serves the far side).

    Values are true objectives: compressed-weight transport plus lam times
    the hanging offset.  The first edge and the edge leaving the pivot
    vertex are evaluated directly from prefix sums; every other edge comes
    from the incremental recurrence over the shared vertex u of adjacent
    edges:

        f_before - f_after = lam*w_hat_u*(d(u,v1) - d(u,vn)) - 2*(1-lam)*z_hat_u

    when u lies before the pivot, and with +2*(1-lam)*z_hat_u when u lies
    after it.  (The two case signs are the numerically verified ones; the
    recurrence is cross-checked against direct evaluation in debug builds.)
    The pivot vertex itself is excluded and bridged by the direct anchor.
    Returns [(tree edge index, objective), ...] in path order.
    """
    m = cp.base.m
    if m < 2:
        raise PreconditionError("path has no edges to delete")
    lam = cfg.lam
    p = cp.base.prefix
    L = float(p[-1])
    wh = cp.w_hat
    zh = cp.z_hat
    C = cp.hang_offset
    Z = float(zh.sum())
    ne = m - 1
    SZ = np.cumsum(zh)
    SW = np.cumsum(wh)
    SWP = np.cumsum(wh * p)
    TWP = float(SWP[-1])

    def direct(j0: int) -> float:
        tc = L * SW[j0] + TWP - 2.0 * SWP[j0]
        szj = SZ[j0]
        return lam * (tc + C) - (1.0 - lam) * abs(szj - (Z - szj))

    # delta[j0] = f[j0-1] - f[j0]; the shared vertex of edges j0-1 and j0
    # is path position j0, which lies before the pivot iff j0 <= pivot-2
    dl = p[:ne]
    sgn = np.where(np.arange(ne) <= cp.pivot - 2, -1.0, 1.0)
    delta = lam * wh[:ne] * (dl - (L - dl)) + sgn * (2.0 * (1.0 - lam) * zh[:ne])

    f = np.empty(ne)
    f[0] = direct(0)
    a2 = cp.pivot - 1
    if 1 <= a2 <= ne - 1:
        if a2 > 1:
            f[1:a2] = f[0] - np.cumsum(delta[1:a2])
        f[a2] = direct(a2)
        if a2 + 1 <= ne - 1:
            f[a2 + 1:] = f[a2] - np.cumsum(delta[a2 + 1:])
    elif ne > 1:
        f[1:] = f[0] - np.cumsum(delta[1:])

    if __debug__:
        tc_all = L * SW[:ne] + TWP - 2.0 * SWP[:ne]
        dvals = lam * (tc_all + C) - (1.0 - lam) * np.abs(SZ[:ne] - (Z - SZ[:ne]))
        tol = cfg.tolerance * (1.0 + float(np.abs(dvals).max()))
        assert np.all(np.abs(f - dvals) <= tol), \
            "recurrence disagrees with direct path evaluation"

    return [(int(cp.base.edges[j0]), float(f[j0])) for j0 in range(ne)]


def solve_balanced_2maxian_linear(cfg: SolverConfig, tree: WeightedTree) -> MaxianSolution:
    """Place facilities at the diameter endpoints, compress all demand onto
    the diameter path, and sweep the path edges.  Requires strictly
    positive edge lengths for the endpoint-optimality guarantee; with any
    zero-length edge it warns and falls back to the cubic method."""
    if tree.n < 2:
        raise PreconditionError("balanced 2-maxian needs at least 2 vertices")
    if bool(np.any(tree.length == 0.0)):
        warnings.warn(
            "zero-length edge: diameter-endpoint optimality is not "
            "guaranteed, falling back to the cubic method",
            RuntimeWarning, stacklevel=2)
        return solve_balanced_2maxian_cubic(cfg, tree)
    path = diameter(tree)
    cp = compress_onto_path(tree, path)
    vals = path_fpmax_sweep(cfg, cp)
    obj = max(v for _, v in vals)
    e = min(ei for ei, v in vals if v == obj)
    j0 = int(np.flatnonzero(cp.base.edges == e)[0])
    pstart = int(path.vertices[0])
    pend = int(path.vertices[-1])
    # x1 serves the larger-endpoint side; the endpoint on the prefix side of
    # the deleted path edge serves the suffix side and vice versa
    prefix_holds_smaller = int(tree.eu[e]) + 1 == int(path.vertices[j0])
    x1, x2 = (pstart, pend) if prefix_holds_smaller else (pend, pstart)
    bip = split_by_edge(tree, e)
    in_a = bip._in_a
    f5 = abs(bip.z_a - bip.z_b)
    d1 = _sweep(tree, np.array([x1 - 1], dtype=np.int64)).dist
    d2 = _sweep(tree, np.array([x2 - 1], dtype=np.int64)).dist
    f2 = float(np.dot(tree.w[~in_a], d1[~in_a])) + float(np.dot(tree.w[in_a], d2[in_a]))
    if __debug__:
        lam = cfg.lam
        recon = lam * f2 - (1.0 - lam) * f5
        assert abs(recon - obj) <= cfg.tolerance * (1.0 + abs(obj)), \
            "sweep objective disagrees with component recomputation"
    return MaxianSolution(e, tree.edge_tuple(e), (x1, x2), f2, f5, obj, "linear")
