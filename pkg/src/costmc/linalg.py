"""Dense linear-algebra kernels in two scalar modes.

Exact mode stores entries as ``fractions.Fraction`` in numpy object arrays and
never uses a tolerance. Float mode uses float64 arrays and a relative
tolerance ``tol``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateVector, RankDeficientRestriction

DEFAULT_TOL = 1e-8


def is_exact(a) -> bool:
    return np.asarray(a).dtype == object


def to_exact(a) -> np.ndarray:
    """Convert an array-like to an object array of Fractions."""
    arr = np.asarray(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = x if isinstance(x, Fraction) else Fraction(x)
    return out


def to_float(a) -> np.ndarray:
    return np.asarray(a, dtype=float)


def zeros_like_mode(shape, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape)


def index_set(indices: Iterable[int], size: int) -> tuple[int, ...]:
    """Sorted, duplicate-free tuple of indices checked against ``size``."""
    out = tuple(sorted(set(int(i) for i in indices)))
    if out and (out[0] < 0 or out[-1] >= size):
        raise IndexError(f"index set {out} out of range for universe of size {size}")
    return out


# --------------------------------------------------------------------------
# exact elimination helpers


def integer_rows(a: np.ndarray) -> list[list[int]]:
    """Scale each row of a rational matrix to integers (row rank is unchanged)."""
    rows = []
    for row in np.atleast_2d(a):
        fr = [x if isinstance(x, Fraction) else Fraction(x) for x in row]
        den = 1
        for x in fr:
            den = math.lcm(den, x.denominator)
        rows.append([x.numerator * (den // x.denominator) for x in fr])
    return rows


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    m = len(a)
    if m == 0:
        return 0
    n = len(a[0])
    rank, prev = 0, 1
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        top = a[rank]
        for i in range(rank + 1, m):
            row = a[i]
            f = row[col]
            for j in range(col + 1, n):
                row[j] = (row[j] * p - f * top[j]) // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def rref(a: np.ndarray) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (rows, pivot columns)."""
    rows = [[x if isinstance(x, Fraction) else Fraction(x) for x in r] for r in np.atleast_2d(a)]
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def exact_nullspace(a: np.ndarray) -> list[np.ndarray]:
    """Basis of the right kernel of a rational matrix."""
    a = np.atleast_2d(a)
    n = a.shape[1]
    rows, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(np.array(v, dtype=object))
    return basis


def exact_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Solve a square rational system; ``None`` if singular."""
    k = a.shape[0]
    aug = np.empty((k, k + 1), dtype=object)
    aug[:, :k] = a
    aug[:, k] = b
    rows, pivots = rref(aug)
    if pivots != list(range(k)):
        return None
    return np.array([rows[i][k] for i in range(k)], dtype=object)


def rank(M, tol: float = DEFAULT_TOL) -> int:
    """Rank of ``M``: exact elimination for rationals, SVD threshold for floats."""
    M = np.atleast_2d(np.asarray(M))
    if M.size == 0:
        return 0
    if is_exact(M):
        return bareiss_rank(integer_rows(M))
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * max(M.shape) * s[0]))


def pivot_columns(M, tol: float = DEFAULT_TOL) -> list[int]:
    """Indices of a maximal independent set of columns, scanned left to right."""
    M = np.atleast_2d(np.asarray(M))
    if is_exact(M):
        return rref(M)[1]
    cols: list[int] = []
    for j in range(M.shape[1]):
        if rank(M[:, cols + [j]], tol) > len(cols):
            cols.append(j)
    return cols


# --------------------------------------------------------------------------
# orthogonal bases


@dataclass(frozen=True)
class OrthoBasis:
    """Mutually orthogonal spanning set of a learned column subspace.

    In float mode the vectors are orthonormal. In exact mode they are only
    orthogonal; ``sq_norms`` carries their squared lengths so that nothing
    leaves the rationals.
    """

    dim: int
    exact: bool = False
    tol: float = DEFAULT_TOL
    vectors: tuple = field(default=())
    sq_norms: tuple = field(default=())

    @property
    def k(self) -> int:
        return len(self.vectors)

    def matrix(self) -> np.ndarray:
        if not self.vectors:
            return zeros_like_mode((self.dim, 0), self.exact)
        return np.column_stack(self.vectors)

    def restricted(self, omega: Sequence[int]) -> np.ndarray:
        return self.matrix()[list(omega), :]


def _norm(v: np.ndarray) -> float:
    if is_exact(v):
        return math.sqrt(float(np.dot(v, v)))
    return float(np.linalg.norm(v))


def orthonormal_extend(basis: OrthoBasis, v) -> OrthoBasis:
    """Return a new basis whose span also contains ``v``."""
    if basis.exact:
        v = to_exact(v)
        w = v.copy()
        for q, s in zip(basis.vectors, basis.sq_norms):
            w = w - (np.dot(q, w) / s) * q
        sq = np.dot(w, w)
        if sq == 0:
            raise DegenerateVector("vector lies in the span of the basis")
        return OrthoBasis(basis.dim, True, basis.tol, basis.vectors + (w,), basis.sq_norms + (sq,))

    v = to_float(v)
    if v.shape != (basis.dim,):
        raise ValueError(f"vector of shape {v.shape} does not match dimension {basis.dim}")
    w = v.copy()
    # modified Gram-Schmidt, then one reorthogonalization pass
    for _ in range(2):
        for q in basis.vectors:
            w -= np.dot(q, w) * q
    nrm = np.linalg.norm(w)
    if nrm <= basis.tol * (1.0 + np.linalg.norm(v)):
        raise DegenerateVector(f"residual norm {nrm:.3e} below tolerance")
    q = w / nrm
    return OrthoBasis(basis.dim, False, basis.tol, basis.vectors + (q,), basis.sq_norms + (1.0,))


def basis_from_columns(M, tol: float = DEFAULT_TOL) -> OrthoBasis:
    """Orthogonalize the independent columns of ``M`` in index order."""
    M = np.atleast_2d(np.asarray(M))
    basis = OrthoBasis(M.shape[0], is_exact(M), tol)
    for j in pivot_columns(M, tol):
        basis = orthonormal_extend(basis, M[:, j])
    return basis


def restricted_residual(basis: OrthoBasis, omega: Sequence[int], x_omega) -> np.ndarray:
    """Component of ``x_omega`` orthogonal to the span of the restricted basis.

    The restricted vectors are re-orthogonalized among themselves; projecting
    with the restriction of the full projector would be wrong because
    restriction does not preserve orthogonality.
    """
    omega = list(omega)
    exact = basis.exact
    x = to_exact(x_omega) if exact else to_float(x_omega).copy()
    if len(x) != len(omega):
        raise ValueError("x_omega length does not match omega")
    qs: list[np.ndarray] = []
    sqs: list = []
    for b in basis.vectors:
        w = b[omega].copy()
        if exact:
            for q, s in zip(qs, sqs):
                w = w - (np.dot(q, w) / s) * q
            s = np.dot(w, w)
            if s != 0:
                qs.append(w)
                sqs.append(s)
        else:
            ref = np.linalg.norm(w)
            for _ in range(2):
                for q in qs:
                    w -= np.dot(q, w) * q
            s = np.linalg.norm(w)
            if s > basis.tol * (1.0 + ref):
                qs.append(w / s)
                sqs.append(1.0)
    for _ in range(1 if exact else 2):
        for q, s in zip(qs, sqs):
            x = x - (np.dot(q, x) / s) * q
    return x


def restricted_residual_norm(basis: OrthoBasis, omega: Sequence[int], x_omega) -> float:
    return _norm(restricted_residual(basis, omega, x_omega))


def is_independent(basis: OrthoBasis, omega: Sequence[int], x_omega) -> bool:
    """Does ``x_omega`` fall outside the span of the restricted basis?

    Exact mode tests for a nonzero residual. Float mode requires the residual
    norm to exceed ``tol * (1 + |x_omega|)``.
    """
    res = restricted_residual(basis, omega, x_omega)
    if basis.exact:
        return any(r != 0 for r in res)
    return float(np.linalg.norm(res)) > basis.tol * (1.0 + float(np.linalg.norm(x_omega)))


def restricted_condition(basis: OrthoBasis, omega: Sequence[int]) -> float:
    """2-norm condition number of the row-restricted basis (float estimate)."""
    if basis.k == 0:
        return 1.0
    s = np.linalg.svd(to_float(basis.restricted(omega)), compute_uv=False)
    return float(s[0] / s[-1]) if s[-1] > 0 else math.inf


def back_project(basis: OrthoBasis, omega: Sequence[int], x_omega) -> np.ndarray:
    """Complete a column known to lie in span(basis) from its entries on ``omega``.

    Returns ``U c`` where ``c`` solves the restricted least-squares problem
    ``U[omega] c = x_omega``.
    """
    omega = list(omega)
    if basis.k == 0:
        return zeros_like_mode(basis.dim, basis.exact)
    U = basis.matrix()
    B = U[omega, :]
    if basis.exact:
        x = to_exact(x_omega)
        c = exact_solve(B.T.dot(B), B.T.dot(x))
        if c is None:
            raise RankDeficientRestriction(
                f"restricted basis of {basis.k} vectors on {len(omega)} rows is rank deficient"
            )
        return U.dot(c)
    x = to_float(x_omega)
    s = np.linalg.svd(B, compute_uv=False)
    if len(s) < basis.k or s[-1] <= basis.tol * max(B.shape) * s[0]:
        raise RankDeficientRestriction(
            f"restricted basis of {basis.k} vectors on {len(omega)} rows is rank deficient"
        )
    c, *_ = np.linalg.lstsq(B, x, rcond=None)
    return U @ c
