"""Problem instances: random generators, the worked examples, and a text format.

File format (UTF-8, ``#`` starts a comment)::

    #@ name greedy-suboptimal        <- optional metadata lines
    matrix 4 4                       <- optionally followed by ``rational`` or ``float``
    1 1 2 3
    ...
                                     <- blank line
    cost perentry                    <- or ``cost uniform c`` / ``cost percolumn``
    1 1 4 1
    ...

Scalars are integers, decimals, or ``p/q`` rationals.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import DimensionMismatch, InvalidRank, ParseError, UnknownFixture
from .linalg import is_exact, rank, to_exact, to_float
from .oracle import CostModel, PerColumn, PerEntry, Uniform

FIXTURES = ("greedy-suboptimal", "greedy-optimal", "tightness")


@dataclass
class Instance:
    hidden: np.ndarray
    model: CostModel
    name: str = ""
    seed: Optional[int] = None
    declared_rank: Optional[int] = None
    declared_sparsity: Optional[int] = None
    notes: dict = field(default_factory=dict)

    @property
    def shape(self) -> tuple[int, int]:
        return self.hidden.shape

    @property
    def exact(self) -> bool:
        return is_exact(self.hidden)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.hidden.shape == other.hidden.shape
            and self.hidden.dtype == other.hidden.dtype
            and bool(np.all(self.hidden == other.hidden))
            and self.model == other.model
            and (self.name, self.seed, self.declared_rank, self.declared_sparsity, self.notes)
            == (other.name, other.seed, other.declared_rank, other.declared_sparsity, other.notes)
        )


# --------------------------------------------------------------------------
# generators


def random_low_rank(
    m: int,
    n: int,
    r: int,
    seed: int = 0,
    mode: str = "rational",
    low: int = -3,
    high: int = 3,
    zero_prob: float = 0.0,
) -> np.ndarray:
    """Seeded rank-``r`` matrix ``A @ B.T`` with ``A`` m x r and ``B`` n x r.

    Rational mode draws small integers in ``[low, high]``; ``zero_prob`` zeroes
    entries of ``A`` to produce sparser column spaces. Float mode draws
    standard normals. Draws repeat until the rank is exactly ``r``.
    """
    if not 1 <= r <= min(m, n):
        raise InvalidRank(f"rank {r} impossible for a {m}x{n} matrix")
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        if mode == "rational":
            A = rng.integers(low, high + 1, size=(m, r))
            if zero_prob:
                A[rng.random((m, r)) < zero_prob] = 0
            B = rng.integers(low, high + 1, size=(n, r))
            M = to_exact(A @ B.T)
        elif mode == "float":
            M = rng.standard_normal((m, r)) @ rng.standard_normal((n, r)).T
        else:
            raise ValueError(f"unknown mode {mode!r}")
        if rank(M) == r:
            return M
    raise InvalidRank(f"could not draw a rank-{r} {m}x{n} matrix")


def random_generic_low_rank(m: int, n: int, r: int, seed: int = 0) -> np.ndarray:
    """Exact rank-``r`` matrix whose column space has sparsity number ``r - 1``.

    The column space is spanned by Vandermonde columns on distinct nodes, so
    every ``r`` rows of the basis are independent.
    """
    if not 1 <= r <= min(m, n):
        raise InvalidRank(f"rank {r} impossible for a {m}x{n} matrix")
    rng = np.random.default_rng(seed)
    nodes = rng.permutation(np.arange(-m, m + 1))[:m]
    V = np.array([[int(t) ** p for p in range(r)] for t in nodes], dtype=object)
    for _ in range(1000):
        B = rng.integers(-3, 4, size=(n, r)).astype(object)
        M = to_exact(V.dot(B.T))
        if rank(M) == r:
            return M
    raise InvalidRank(f"could not draw a rank-{r} {m}x{n} matrix")


def random_cost_model(kind: str, m: int, n: int, seed: int = 0, high: int = 10) -> CostModel:
    """Positive integer costs in ``[1, high]``."""
    rng = np.random.default_rng(seed)
    if kind == "uniform":
        return Uniform(Fraction(int(rng.integers(1, high + 1))))
    if kind == "percolumn":
        return PerColumn(tuple(Fraction(int(c)) for c in rng.integers(1, high + 1, size=n)))
    if kind == "perentry":
        return PerEntry(rng.integers(1, high + 1, size=(m, n)).astype(object))
    raise ValueError(f"unknown cost model kind {kind!r}")


# --------------------------------------------------------------------------
# worked examples

_SUBOPTIMAL_M = [[1, 1, 2, 3], [1, 2, 3, 4], [1, 3, 4, 5], [1, 4, 5, 6]]
_OPTIMAL_M = [[1, 1, 2, 2], [1, 2, 2, 3], [1, 3, 2, 4], [1, 4, 2, 5]]
_COSTS = [[1, 1, 4, 1], [1, 5, 3, 4], [4, 3, 4, 4], [1, 4, 4, 8]]


def tightness_costs(eps) -> np.ndarray:
    small, ten, big = eps / 100, 10, 10 - eps
    pattern = [
        [small, small, small, small, big, big],
        [small, small, small, small, big, big],
        [ten, ten, small, small, small, small],
        [ten, ten, small, small, small, small],
        [small, small, ten, ten, big, big],
        [small, small, ten, ten, big, big],
    ]
    out = np.empty((6, 6), dtype=object if not isinstance(eps, float) else float)
    for i in range(6):
        for j in range(6):
            v = pattern[i][j]
            out[i, j] = v if isinstance(eps, float) else Fraction(v)
    return out


def tightness_hidden(exact: bool = True) -> np.ndarray:
    """Rank-2 6x6 matrix with column j equal to ``ones + j * (1..6)``.

    Any two columns form a basis and the column space has sparsity number 1.
    """
    u = np.ones(6, dtype=int)
    v = np.arange(1, 7)
    M = np.column_stack([u + j * v for j in range(6)])
    return to_exact(M) if exact else to_float(M)


def builtin_fixture(name: str, eps: Union[Fraction, float, str, None] = None) -> Instance:
    """Built-in instances; ``tightness`` takes ``eps`` (or ``"tightness:0.01"``)."""
    if ":" in name:
        name, arg = name.split(":", 1)
        eps = arg
    if name == "greedy-suboptimal":
        return Instance(
            to_exact(_SUBOPTIMAL_M), PerEntry(_COSTS), name=name, declared_rank=2, declared_sparsity=1
        )
    if name == "greedy-optimal":
        return Instance(
            to_exact(_OPTIMAL_M), PerEntry(_COSTS), name=name, declared_rank=2, declared_sparsity=1
        )
    if name == "tightness":
        if eps is None:
            eps = Fraction(1, 100)
        if isinstance(eps, str):
            eps = Fraction(eps)
        float_mode = isinstance(eps, float)
        label = f"tightness:{eps}"
        return Instance(
            tightness_hidden(exact=not float_mode),
            PerEntry(tightness_costs(eps)),
            name=label,
            declared_rank=2,
            declared_sparsity=1,
            notes={"hidden": "synthetic completion; only the cost matrix is given"},
        )
    raise UnknownFixture(name)


# --------------------------------------------------------------------------
# text format

_SCALAR = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(/[+-]?\d+)?$")


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _parse_scalar(tok: str, exact: bool, line: int, col: int):
    if not _SCALAR.match(tok):
        raise ParseError(f"not a number: {tok!r}", line, col)
    try:
        return Fraction(tok) if exact else float(Fraction(tok)) if "/" in tok else float(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar {tok!r}: {exc}", line, col) from None


def dumps(inst: Instance) -> str:
    lines = []
    meta = {
        "name": inst.name,
        "seed": inst.seed,
        "rank": inst.declared_rank,
        "sparsity": inst.declared_sparsity,
    }
    for key, val in meta.items():
        if val not in (None, ""):
            lines.append(f"#@ {key} {val}")
    for key, val in inst.notes.items():
        lines.append(f"#@ note.{key} {val}")
    m, n = inst.shape
    lines.append(f"matrix {m} {n} {'rational' if inst.exact else 'float'}")
    for row in inst.hidden:
        lines.append(" ".join(format_scalar(x) for x in row))
    lines.append("")
    model = inst.model
    if isinstance(model, Uniform):
        lines.append(f"cost uniform {format_scalar(model.cost)}")
    elif isinstance(model, PerColumn):
        lines.append("cost percolumn")
        lines.append(" ".join(format_scalar(x) for x in model.costs))
    else:
        lines.append("cost perentry")
        for row in model.costs:
            lines.append(" ".join(format_scalar(x) for x in row))
    return "\n".join(lines) + "\n"


def loads(text: str) -> Instance:
    meta: dict[str, str] = {}
    notes: dict[str, str] = {}
    rows: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.startswith("#@"):
            parts = raw[2:].strip().split(None, 1)
            if parts:
                key, val = parts[0], parts[1] if len(parts) > 1 else ""
                if key.startswith("note."):
                    notes[key[5:]] = val
                else:
                    meta[key] = val
            continue
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ParseError("empty instance file", 1, 1)

    it = iter(rows)
    lineno, header = next(it)
    head = header.split()
    if head[0] != "matrix" or len(head) not in (3, 4):
        raise ParseError("expected 'matrix m n [rational|float]'", lineno, 1)
    try:
        m, n = int(head[1]), int(head[2])
    except ValueError:
        raise ParseError("matrix dimensions must be integers", lineno, len(head[0]) + 2) from None
    if m < 1 or n < 1:
        raise ParseError("matrix dimensions must be positive", lineno, 1)
    mode = head[3] if len(head) == 4 else "rational"
    if mode not in ("rational", "float"):
        raise ParseError(f"unknown scalar mode {mode!r}", lineno, header.index(mode) + 1)
    exact = mode == "rational"

    def read_row(expect: int, what: str):
        try:
            ln, text_ = next(it)
        except StopIteration:
            raise DimensionMismatch(f"{what} block ends before all rows were read") from None
        toks = list(_tokens(text_))
        if toks and toks[0][1] in ("cost", "matrix"):
            raise DimensionMismatch(f"line {ln}: {what} has too few rows")
        if len(toks) != expect:
            raise DimensionMismatch(f"line {ln}: {what} row has {len(toks)} entries, expected {expect}")
        return [(_parse_scalar(t, exact, ln, c), ln, c) for c, t in toks]

    hidden = [[v for v, _, _ in read_row(n, "matrix")] for _ in range(m)]

    try:
        lineno, cost_header = next(it)
    except StopIteration:
        raise ParseError("missing cost block") from None
    ch = cost_header.split()
    if ch[0] != "cost" or len(ch) < 2:
        if ch[0][0].isdigit() or ch[0][0] in "+-.":
            raise DimensionMismatch(f"line {lineno}: matrix block has more than {m} rows")
        raise ParseError("expected 'cost uniform c' | 'cost percolumn' | 'cost perentry'", lineno, 1)
    kind = ch[1]

    def positive(cells):
        for v, ln, c in cells:
            if not v > 0:
                raise ParseError("costs must be positive", ln, c)
        return [v for v, _, _ in cells]

    if kind == "uniform":
        if len(ch) != 3:
            raise ParseError("'cost uniform' takes one value", lineno, 1)
        col = cost_header.index(ch[2]) + 1
        model: CostModel = Uniform(positive([(_parse_scalar(ch[2], exact, lineno, col), lineno, col)])[0])
    elif kind == "percolumn":
        model = PerColumn(tuple(positive(read_row(n, "cost"))))
    elif kind == "perentry":
        model = PerEntry(np.array([positive(read_row(n, "cost")) for _ in range(m)], dtype=object))
    else:
        raise ParseError(f"unknown cost model {kind!r}", lineno, cost_header.index(kind) + 1)
    extra = next(it, None)
    if extra is not None:
        raise DimensionMismatch(f"line {extra[0]}: unexpected content after the cost block")

    hidden_arr = to_exact(hidden) if exact else to_float(hidden)
    return Instance(
        hidden_arr,
        model,
        name=meta.get("name", ""),
        seed=int(meta["seed"]) if "seed" in meta else None,
        declared_rank=int(meta["rank"]) if "rank" in meta else None,
        declared_sparsity=int(meta["sparsity"]) if "sparsity" in meta else None,
        notes=notes,
    )


def _tokens(line: str):
    for mt in re.finditer(r"\S+", line):
        yield mt.start() + 1, mt.group()


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(dumps(inst), encoding="utf-8")


def load_instance(path) -> Instance:
    return loads(Path(path).read_text(encoding="utf-8"))


def resolve_instance(spec: str, seed: int = 0) -> Instance:
    """A fixture name, ``random:M:N:R[:float]``, or a file path."""
    base = spec.split(":", 1)[0]
    if base in FIXTURES:
        return builtin_fixture(spec)
    if base == "random":
        parts = spec.split(":")[1:]
        try:
            m, n, r = (int(p) for p in parts[:3])
        except ValueError:
            raise ParseError(f"expected random:M:N:R[:float], got {spec!r}") from None
        mode = parts[3] if len(parts) > 3 else "rational"
        hidden = random_low_rank(m, n, r, seed=seed, mode=mode)
        return Instance(
            hidden,
            random_cost_model("perentry", m, n, seed=seed),
            name=spec,
            seed=seed,
            declared_rank=r,
        )
    return load_instance(spec)
