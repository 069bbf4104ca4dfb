"""Independent reference computations for the tests.

Nothing here imports costmc's linear algebra: ranks come from plain
Fraction elimination and costs from explicit cell sets.
"""
from fractions import Fraction
from itertools import combinations


def gauss_rank(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    n = len(a[0])
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, len(a)):
            f = a[i][c] / a[rank][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def sub(M, rows, cols):
    return [[M[i][j] for j in cols] for i in rows]


def brute_psi_bar(B):
    """Largest set S of rows on which some nonzero vector of col-span(B) vanishes."""
    B = [list(r) for r in B]
    m, k = len(B), len(B[0])
    r = gauss_rank(B)
    best = -1
    for size in range(m):
        for S in combinations(range(m), size):
            if gauss_rank(sub(B, S, range(k))) < r:
                best = max(best, size)
    return best


def plan_cost(chi, R, C):
    cells = {(i, j) for i in R for j in range(len(chi[0]))}
    cells |= {(i, j) for i in range(len(chi)) for j in C}
    return sum((Fraction(chi[i][j]) if not isinstance(chi[i][j], float) else chi[i][j] for i, j in cells), 0)


def enumerate_optimum(M, chi, d):
    """Minimum plan cost over every (R, C) with |R| = d and rank(M[R, C]) = rank(M)."""
    M = [list(r) for r in M]
    m, n = len(M), len(M[0])
    r = gauss_rank(M)
    best = None
    for R in combinations(range(m), d):
        for C in combinations(range(n), r):
            if gauss_rank(sub(M, R, C)) == r:
                c = plan_cost(chi, R, C)
                if best is None or c < best:
                    best = c
    return best
