"""Exhaustive two-stage baselines used to certify greedy plans.

These read the hidden matrix directly: they are certification oracles, not
recovery algorithms.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from .errors import DimensionCapExceeded, NoFeasiblePlan
from .linalg import DEFAULT_TOL, bareiss_rank, integer_rows, is_exact, rank, to_float
from .oracle import CostModel, submatrix_cost

BRUTE_FORCE_CAP = 14


@dataclass(frozen=True)
class TwoStagePlan:
    rows: tuple[int, ...]
    columns: tuple[int, ...]
    cost: object


def two_stage_cost(
    model: CostModel,
    rows: Optional[Iterable[int]],
    cols: Optional[Iterable[int]],
    shape: tuple[int, int],
):
    """Cost of observing rows R and columns C in full, overlap charged once."""
    rows = list(rows) if rows is not None else None
    cols = list(cols) if cols is not None else None
    return (
        submatrix_cost(model, rows, None, shape)
        + submatrix_cost(model, None, cols, shape)
        - submatrix_cost(model, rows, cols, shape)
    )


class _RankCache:
    """Submatrix rank queries on a fixed matrix."""

    def __init__(self, M, tol: float):
        self.exact = is_exact(M)
        self.tol = tol
        if self.exact:
            self.Z = np.array(integer_rows(M), dtype=object)
        else:
            self.Z = to_float(M)

    def rank(self, rows, cols) -> int:
        sub = self.Z[np.ix_(list(rows), list(cols))]
        if self.exact:
            return bareiss_rank(sub.tolist())
        return rank(sub, self.tol)


def brute_force_optimal(
    hidden,
    model: CostModel,
    d: int,
    tol: float = DEFAULT_TOL,
    cap: int = BRUTE_FORCE_CAP,
    all_optimal: bool = False,
):
    """Cheapest two-stage plan with ``|R| = d`` rows and a column basis C.

    A plan is feasible when ``rank(M[R, C]) = r``, i.e. C is a basis of the
    column space and stays one after restriction to R. Plans are scanned in
    lexicographic (R, C) order and only a strictly cheaper plan replaces the
    incumbent, so the returned plan is the lexicographically first minimizer.
    With ``all_optimal=True`` every minimizer is returned as a list.
    """
    M = np.atleast_2d(np.asarray(hidden))
    m, n = M.shape
    if m > cap or n > cap:
        raise DimensionCapExceeded(f"{m}x{n} exceeds the brute-force cap {cap}")
    if not 1 <= d <= m:
        raise ValueError(f"d must lie in [1, {m}]")
    r = rank(M, tol)
    chi = model.cost_matrix(m, n)
    ranks = _RankCache(M, tol)
    col_totals = chi.sum(axis=0)
    bases = [C for C in combinations(range(n), r) if ranks.rank(range(m), C) == r]

    best_cost = None
    best: list[TwoStagePlan] = []
    for R in combinations(range(m), d):
        row_cost = chi[list(R), :].sum()
        residual = col_totals - chi[list(R), :].sum(axis=0)
        for C in bases:
            cost = row_cost + sum((residual[j] for j in C), 0)
            if best_cost is not None and cost > best_cost:
                continue
            if ranks.rank(R, C) != r:
                continue
            plan = TwoStagePlan(R, C, cost)
            if best_cost is None or cost < best_cost:
                best_cost, best = cost, [plan]
            else:
                best.append(plan)
    if not best:
        raise NoFeasiblePlan(f"no (R, C) with |R|={d} keeps a rank-{r} column basis")
    return best if all_optimal else best[0]


def optimality_ratio(greedy_cost, optimal_cost):
    if optimal_cost == 0:
        raise ZeroDivisionError("optimal cost is zero")
    return greedy_cost / optimal_cost
