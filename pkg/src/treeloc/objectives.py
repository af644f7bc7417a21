"""Objective evaluators for facility pairs on an edge-induced bipartition.

The scalarized objectives are always computed with the same expression
shape, lam*(transport) +/- (1.0-lam)*balance, so that independent routes
to the same quantities compare bit-for-bit on integer inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, PreconditionError
from .tree import EdgeBipartition, WeightedTree, _sweep, split_by_edge


@dataclass(frozen=True)
class SolverConfig:
    """lam is the transport weight in [0, 1]; 1-lam weighs the balance term.

    tolerance is used for floating comparisons where exactness cannot be
    guaranteed; tie_break is fixed to the smallest-id policy.
    """

    lam: float
    tolerance: float = 1e-9
    tie_break: str = "smallest-id"

    def __post_init__(self):
        if not (isinstance(self.lam, (int, float)) and 0.0 <= self.lam <= 1.0):
            raise ConfigError(f"lambda must lie in [0, 1], got {self.lam!r}")
        if not (isinstance(self.tolerance, (int, float)) and self.tolerance >= 0):
            raise ConfigError("tolerance must be non-negative")
        if self.tie_break != "smallest-id":
            raise ConfigError(f"unknown tie-break policy {self.tie_break!r}")


@dataclass(frozen=True, eq=False)
class Assignment:
    """A bipartition together with the facility serving each side.

    serve_a and serve_b are 1-based vertex ids.  In median mode each
    facility must lie inside the side it serves; in maxian mode clients are
    served by a facility on the opposite side, so serve_a lies in side_b
    and vice versa (degenerate reported solutions may break that rule, but
    evaluation through Assignment enforces it).
    """

    partition: EdgeBipartition
    serve_a: int
    serve_b: int
    mode: str

    def __post_init__(self):
        if self.mode not in ("median", "maxian"):
            raise PreconditionError(f"unknown assignment mode {self.mode!r}")
        part = self.partition
        n = part._in_a.size
        for f in (self.serve_a, self.serve_b):
            if not (1 <= f <= n):
                raise PreconditionError(f"facility id {f} out of range")
        a_in_a = bool(part._in_a[self.serve_a - 1])
        b_in_a = bool(part._in_a[self.serve_b - 1])
        if self.mode == "median":
            if not a_in_a or b_in_a:
                raise PreconditionError(
                    "median facilities must lie inside the side they serve")
        else:
            if a_in_a or not b_in_a:
                raise PreconditionError(
                    "maxian facilities must lie opposite the side they serve")

    @property
    def facilities(self) -> tuple[int, int]:
        """(x1, x2) where x1 serves side_b and x2 serves side_a in maxian
        mode; in median mode x1 serves side_a."""
        if self.mode == "median":
            return self.serve_a, self.serve_b
        return self.serve_b, self.serve_a


def median_assignment(tree: WeightedTree, e: int, m1: int, m2: int) -> Assignment:
    """m1 serves the side containing the smaller endpoint of edge e."""
    return Assignment(split_by_edge(tree, e), m1, m2, "median")


def maxian_assignment(tree: WeightedTree, e: int, x1: int, x2: int) -> Assignment:
    """x1 serves the side containing the larger endpoint of edge e."""
    return Assignment(split_by_edge(tree, e), x2, x1, "maxian")


def eval_transport(tree: WeightedTree, assignment: Assignment) -> float:
    """Sum over both sides of w_i * d(v_i, serving facility)."""
    for f in (assignment.serve_a, assignment.serve_b):
        if not (1 <= f <= tree.n):
            raise PreconditionError(f"facility id {f} out of range")
    in_a = assignment.partition._in_a
    da = _sweep(tree, np.array([assignment.serve_a - 1])).dist
    db = _sweep(tree, np.array([assignment.serve_b - 1])).dist
    ta = float(np.dot(tree.w[in_a], da[in_a]))
    tb = float(np.dot(tree.w[~in_a], db[~in_a]))
    return ta + tb


def eval_f3(partition: EdgeBipartition) -> float:
    """Larger of the two sides' z sums (the busier facility's load)."""
    return max(partition.z_a, partition.z_b)


def eval_f5(partition: EdgeBipartition) -> float:
    """Absolute difference of the two sides' z sums."""
    return abs(partition.z_a - partition.z_b)


def eval_fpmed(cfg: SolverConfig, tree: WeightedTree, assignment: Assignment) -> float:
    if assignment.mode != "median":
        raise PreconditionError("eval_fpmed needs a median-mode assignment")
    lam = cfg.lam
    return lam * eval_transport(tree, assignment) \
        + (1.0 - lam) * eval_f5(assignment.partition)


def eval_fpmax(cfg: SolverConfig, tree: WeightedTree, assignment: Assignment) -> float:
    if assignment.mode != "maxian":
        raise PreconditionError("eval_fpmax needs a maxian-mode assignment")
    lam = cfg.lam
    return lam * eval_transport(tree, assignment) \
        - (1.0 - lam) * eval_f5(assignment.partition)
