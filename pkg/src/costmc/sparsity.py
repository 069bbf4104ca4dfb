"""Nonsparsity and sparsity numbers of vectors, subspaces and matrices.

For a subspace U of R^m the nonsparsity number is the fewest nonzeros any
nonzero vector of U can have; the sparsity number is m minus that, i.e. the
most zeros such a vector can have. Both are found by exhaustive search, so
``m`` is capped.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import DimensionCapExceeded, ZeroMatrix
from .linalg import (
    DEFAULT_TOL,
    exact_nullspace,
    is_exact,
    pivot_columns,
    rank,
    to_float,
)

SEARCH_CAP = 22


@dataclass(frozen=True)
class SparsityReport:
    m: int
    rank: int
    psi: int
    psi_bar: int
    witness: np.ndarray
    zero_support: tuple[int, ...]

    @property
    def d(self) -> int:
        """Smallest per-column sample size that guarantees exact recovery."""
        return self.psi_bar + 1


def vector_sparsity(x, tol: float = DEFAULT_TOL) -> tuple[int, int]:
    """Return ``(psi, psi_bar)`` for a single vector; the zero vector has psi 0."""
    x = np.asarray(x)
    if is_exact(x):
        psi = sum(1 for v in x if v != 0)
    else:
        psi = int(np.sum(np.abs(x) > tol))
    return psi, len(x) - psi


def _kernel_vector(B: np.ndarray, exact: bool) -> np.ndarray:
    if exact:
        return exact_nullspace(B)[0]
    _, _, vt = np.linalg.svd(B)
    return vt[-1]


def _normalize_witness(x: np.ndarray, exact: bool, tol: float) -> np.ndarray:
    if exact:
        lead = next(v for v in x if v != 0)
        return np.array([v / lead for v in x], dtype=object)
    x = x / np.linalg.norm(x)
    x[np.abs(x) <= tol] = 0.0
    lead = x[np.flatnonzero(x)[0]]
    return x if lead > 0 else -x


def subspace_sparsity(
    basis,
    tol: float = DEFAULT_TOL,
    cap: int = SEARCH_CAP,
    method: str = "flats",
) -> SparsityReport:
    """Sparsity number of the column space of ``basis``.

    ``method="flats"`` enumerates (r-1)-subsets of rows that are independent
    in the row-restricted basis; each determines a one-dimensional kernel and
    hence a candidate vector whose zero set is a maximal one. ``method="supports"``
    tries every candidate zero set by decreasing size and stops at the first
    size level that admits a nonzero vector. Both return the lexicographically
    smallest maximum zero set.
    """
    B = np.atleast_2d(np.asarray(basis))
    m = B.shape[0]
    if m > cap:
        raise DimensionCapExceeded(f"m={m} exceeds the sparsity search cap {cap}")
    exact = is_exact(B)
    cols = pivot_columns(B, tol)
    if not cols:
        raise ZeroMatrix("subspace is {0}")
    B = B[:, cols]
    r = len(cols)
    if not exact:
        # orthonormal columns make the singular-value threshold scale free
        B, _ = np.linalg.qr(to_float(B))

    if method == "flats":
        best = _search_flats(B, r, exact, tol)
    elif method == "supports":
        best = _search_supports(B, r, exact, tol)
    else:
        raise ValueError(f"unknown method {method!r}")
    support, x = best
    witness = _normalize_witness(x, exact, tol)
    psi, psi_bar = vector_sparsity(witness, tol)
    return SparsityReport(m, r, psi, psi_bar, witness, support)


def _zero_set(x: np.ndarray, exact: bool, tol: float) -> tuple[int, ...]:
    if exact:
        return tuple(i for i, v in enumerate(x) if v == 0)
    scale = np.linalg.norm(x)
    return tuple(int(i) for i in np.flatnonzero(np.abs(x) <= tol * scale))


def _search_flats(B, r, exact, tol):
    m = B.shape[0]
    best_support: tuple[int, ...] | None = None
    best_x = None
    for T in combinations(range(m), r - 1):
        BT = B[list(T), :]
        if r > 1 and rank(BT, tol) < r - 1:
            continue
        z = _kernel_vector(BT, exact) if r > 1 else _unit(r, exact)
        x = B.dot(z)
        S = _zero_set(x, exact, tol)
        if best_support is None or len(S) > len(best_support) or (
            len(S) == len(best_support) and S < best_support
        ):
            best_support, best_x = S, x
    return best_support, best_x


def _unit(r, exact):
    if exact:
        return np.array([Fraction(1)] + [Fraction(0)] * (r - 1), dtype=object)
    return np.eye(r)[0]


def _search_supports(B, r, exact, tol):
    m = B.shape[0]
    for size in range(m - 1, -1, -1):
        for S in combinations(range(m), size):
            BS = B[list(S), :]
            if size == 0:
                z = _unit(r, exact)
            elif _rank_below(BS, r, exact, tol):
                z = _kernel_vector(BS, exact)
            else:
                continue
            return S, B.dot(z)
    raise AssertionError("unreachable: the empty support is always feasible")


def _rank_below(BS, r, exact, tol) -> bool:
    if BS.shape[0] < r:
        return True
    if exact:
        return rank(BS) < r
    # smallest singular value below tol * m flags a kernel vector
    s = np.linalg.svd(BS, compute_uv=False)
    return s[-1] < tol * BS.shape[0]


def matrix_sparsity(M, tol: float = DEFAULT_TOL, cap: int = SEARCH_CAP, method: str = "flats") -> SparsityReport:
    """Sparsity number of a matrix, i.e. of its column space."""
    M = np.atleast_2d(np.asarray(M))
    if rank(M, tol) == 0:
        raise ZeroMatrix("matrix_sparsity is undefined for the zero matrix")
    return subspace_sparsity(M, tol=tol, cap=cap, method=method)
