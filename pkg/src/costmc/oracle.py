"""Cost models and the observation oracle that charges for revealed entries."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import IndexOutOfRange, LengthMismatch, OutOfBandAccess
from .linalg import is_exact, to_exact, to_float

Scalar = Union[Fraction, float, int]


def _positive(values, what: str) -> None:
    for v in np.asarray(values, dtype=object).ravel():
        if not v > 0:
            raise ValueError(f"{what} must be strictly positive, got {v}")


@dataclass(frozen=True)
class Uniform:
    cost: Scalar = 1

    def __post_init__(self):
        _positive([self.cost], "costs")

    kind = "uniform"

    def cost_matrix(self, m: int, n: int) -> np.ndarray:
        if isinstance(self.cost, float):
            return np.full((m, n), self.cost)
        out = np.empty((m, n), dtype=object)
        out.fill(Fraction(self.cost))
        return out


@dataclass(frozen=True)
class PerColumn:
    costs: tuple

    def __post_init__(self):
        object.__setattr__(self, "costs", tuple(self.costs))
        _positive(self.costs, "costs")

    kind = "percolumn"

    def cost_matrix(self, m: int, n: int) -> np.ndarray:
        if len(self.costs) != n:
            raise LengthMismatch(f"{len(self.costs)} column costs for {n} columns")
        row = _as_mode(np.array(self.costs, dtype=object))
        return np.tile(row, (m, 1))


@dataclass(frozen=True, eq=False)
class PerEntry:
    costs: np.ndarray

    def __post_init__(self):
        arr = _as_mode(np.atleast_2d(np.array(self.costs, dtype=object)))
        _positive(arr, "costs")
        arr.setflags(write=False)
        object.__setattr__(self, "costs", arr)

    kind = "perentry"

    def cost_matrix(self, m: int, n: int) -> np.ndarray:
        if self.costs.shape != (m, n):
            raise LengthMismatch(f"cost matrix {self.costs.shape} does not match ({m}, {n})")
        return self.costs.copy()

    def __eq__(self, other):
        return (
            isinstance(other, PerEntry)
            and self.costs.shape == other.costs.shape
            and bool(np.all(self.costs == other.costs))
        )


CostModel = Union[Uniform, PerColumn, PerEntry]


def _as_mode(arr: np.ndarray) -> np.ndarray:
    """Floats stay floats; anything else becomes exact."""
    if any(isinstance(v, float) for v in arr.ravel()):
        return to_float(arr)
    return to_exact(arr)


def _total(values) -> Scalar:
    values = np.asarray(values)
    if values.size == 0:
        return Fraction(0) if is_exact(values) else 0.0
    return values.sum()


def _resolve(idx: Optional[Iterable[int]], size: int) -> list[int]:
    if idx is None:
        return list(range(size))
    out = sorted(set(int(i) for i in idx))
    if out and (out[0] < 0 or out[-1] >= size):
        raise IndexOutOfRange(f"indices {out} out of range for size {size}")
    return out


def submatrix_cost(
    model: CostModel,
    rows: Optional[Iterable[int]],
    cols: Optional[Iterable[int]],
    shape: tuple[int, int],
) -> Scalar:
    """Total cost of the cells ``rows x cols``; ``None`` stands for all indices."""
    m, n = shape
    chi = model.cost_matrix(m, n)
    R, C = _resolve(rows, m), _resolve(cols, n)
    if not R or not C:
        return _total(chi[:0, :0])
    return _total(chi[np.ix_(R, C)])


@dataclass(frozen=True)
class Ledger:
    total_cost: Scalar
    entry_count: int
    per_column_counts: tuple[int, ...]
    rows_fully_observed: tuple[int, ...]
    columns_fully_observed: tuple[int, ...]


class ObservationOracle:
    """Sole access path to a hidden matrix; charges each distinct entry once.

    With ``strict=True`` (the default) the hidden matrix cannot be read in
    bulk at all, so any algorithm that peeks fails loudly.
    """

    def __init__(self, hidden, model: CostModel, strict: bool = True):
        hidden = np.atleast_2d(np.asarray(hidden))
        self._hidden = hidden.copy()
        self.shape = hidden.shape
        self.model = model
        self.strict = strict
        m, n = self.shape
        self._chi = model.cost_matrix(m, n)
        self._observed = np.zeros((m, n), dtype=bool)
        self.total_cost: Scalar = Fraction(0) if is_exact(self._chi) else 0.0

    @property
    def exact(self) -> bool:
        return is_exact(self._hidden)

    @property
    def cost_matrix(self) -> np.ndarray:
        return self._chi.copy()

    @property
    def hidden(self) -> np.ndarray:
        if self.strict:
            raise OutOfBandAccess("hidden matrix read outside of observe_* calls")
        return self._hidden.copy()

    def _check(self, i: int, j: int) -> None:
        m, n = self.shape
        if not (0 <= i < m and 0 <= j < n):
            raise IndexOutOfRange(f"entry ({i}, {j}) outside {m}x{n} matrix")

    def _charge(self, rows: Sequence[int], cols: Sequence[int]) -> None:
        block = np.ix_(rows, cols)
        new = ~self._observed[block]
        if new.any():
            self.total_cost = self.total_cost + _total(self._chi[block][new])
            self._observed[block] = True

    def observe_entry(self, i: int, j: int):
        self._check(i, j)
        self._charge([i], [j])
        return self._hidden[i, j]

    def observe(self, rows: Sequence[int], j: int) -> np.ndarray:
        """Entries of column ``j`` at ``rows``."""
        rows = _resolve(rows, self.shape[0])
        self._check(0, j)
        self._charge(rows, [j])
        return self._hidden[rows, j].copy()

    def observe_rows(self, rows: Iterable[int]) -> np.ndarray:
        rows = _resolve(rows, self.shape[0])
        if not rows:
            raise ValueError("observe_rows needs a nonempty row set")
        self._charge(rows, list(range(self.shape[1])))
        return self._hidden[rows, :].copy()

    def observe_column(self, j: int) -> np.ndarray:
        self._check(0, j)
        self._charge(list(range(self.shape[0])), [j])
        return self._hidden[:, j].copy()

    def observed_mask(self) -> np.ndarray:
        return self._observed.copy()

    @property
    def ledger(self) -> Ledger:
        obs = self._observed
        return Ledger(
            total_cost=self.total_cost,
            entry_count=int(obs.sum()),
            per_column_counts=tuple(int(c) for c in obs.sum(axis=0)),
            rows_fully_observed=tuple(int(i) for i in np.flatnonzero(obs.all(axis=1))),
            columns_fully_observed=tuple(int(j) for j in np.flatnonzero(obs.all(axis=0))),
        )
