from fractions import Fraction

import numpy as np
import pytest

from costmc.errors import DimensionMismatch, InvalidRank, ParseError, UnknownFixture
from costmc.instances import (
    Instance,
    dumps,
    load_instance,
    loads,
    builtin_fixture,
    random_generic_low_rank,
    random_low_rank,
    resolve_instance,
    save_instance,
)
from costmc.linalg import rank
from costmc.oracle import PerColumn, PerEntry, Uniform
from costmc.sparsity import matrix_sparsity
from oracles import gauss_rank


def test_random_low_rank_ranks():
    assert rank(random_low_rank(4, 4, 1, seed=2)) == 1
    assert rank(random_low_rank(4, 4, 4, seed=2)) == 4
    M = random_low_rank(8, 10, 3, seed=9)
    assert gauss_rank(M.tolist()) == 3
    F = random_low_rank(8, 10, 3, seed=9, mode="float")
    assert F.dtype == float and rank(F) == 3
    with pytest.raises(InvalidRank):
        random_low_rank(3, 3, 4)
    with pytest.raises(InvalidRank):
        random_low_rank(3, 3, 0)


def test_random_low_rank_is_deterministic():
    a = random_low_rank(6, 5, 2, seed=17, zero_prob=0.3)
    b = random_low_rank(6, 5, 2, seed=17, zero_prob=0.3)
    assert (a == b).all()
    assert not (a == random_low_rank(6, 5, 2, seed=18, zero_prob=0.3)).all()


def test_generic_low_rank_sparsity():
    for seed in range(10):
        for r in (1, 2, 3):
            M = random_generic_low_rank(7, 6, r, seed=seed)
            assert rank(M) == r
            assert matrix_sparsity(M).psi_bar == r - 1


def test_fixture_greedy_suboptimal(suboptimal):
    assert suboptimal.hidden.tolist() == [[1, 1, 2, 3], [1, 2, 3, 4], [1, 3, 4, 5], [1, 4, 5, 6]]
    assert suboptimal.model.costs.tolist() == [[1, 1, 4, 1], [1, 5, 3, 4], [4, 3, 4, 4], [1, 4, 4, 8]]
    assert rank(suboptimal.hidden) == suboptimal.declared_rank == 2
    assert matrix_sparsity(suboptimal.hidden).psi_bar == suboptimal.declared_sparsity == 1


def test_fixture_greedy_optimal(optimal):
    M = optimal.hidden
    assert (M[:, 2] == 2 * M[:, 0]).all()
    assert (M[:, 3] == M[:, 0] + M[:, 1]).all()
    assert matrix_sparsity(M).psi_bar == 1


def test_fixture_tightness():
    inst = builtin_fixture("tightness", Fraction(1))
    values = set(inst.model.costs.ravel().tolist())
    assert values == {Fraction(1, 100), 10, 9}
    M = inst.hidden
    assert rank(M) == 2 and matrix_sparsity(M).psi_bar == 1
    assert rank(M[:, [0, 1]]) == 2 and rank(M[:, [4, 5]]) == 2
    assert builtin_fixture("tightness:1/10").model.costs[0, 0] == Fraction(1, 1000)
    assert builtin_fixture("tightness", 0.5).hidden.dtype == float
    with pytest.raises(UnknownFixture):
        builtin_fixture("nope")


@pytest.mark.parametrize("name", ["greedy-suboptimal", "greedy-optimal", "tightness:1/100"])
def test_round_trip(name, tmp_path):
    inst = builtin_fixture(name)
    path = tmp_path / "x.txt"
    save_instance(inst, path)
    assert load_instance(path) == inst


def test_round_trip_other_models_and_floats():
    M = random_low_rank(3, 4, 2, seed=1)
    for model in (Uniform(Fraction(3, 2)), PerColumn((1, Fraction(1, 3), 2, 5)), PerEntry(np.full((3, 4), Fraction(7, 9)))):
        inst = Instance(M, model, name="x", seed=1, declared_rank=2)
        assert loads(dumps(inst)) == inst
    F = random_low_rank(3, 4, 2, seed=1, mode="float")
    inst = Instance(F, PerColumn((0.1, 0.2, 1e-7, 3.0)))
    back = loads(dumps(inst))
    assert back == inst and back.hidden.dtype == float


def test_parse_examples():
    text = """# comment
matrix 2 2
1 1/2   # trailing comment
0.25 -3

cost percolumn
1 2
"""
    inst = loads(text)
    assert inst.hidden.tolist() == [[1, Fraction(1, 2)], [Fraction(1, 4), -3]]
    assert inst.model == PerColumn((1, 2))


def test_zero_cost_rejected():
    text = "matrix 1 2\n1 2\n\ncost perentry\n1 0\n"
    with pytest.raises(ParseError, match="costs must be positive") as err:
        loads(text)
    assert (err.value.line, err.value.column) == (5, 3)


def test_dimension_mismatch():
    inst = builtin_fixture("greedy-suboptimal")
    lines = dumps(inst).splitlines()
    del lines[-1]
    with pytest.raises(DimensionMismatch):
        loads("\n".join(lines))
    with pytest.raises(DimensionMismatch):
        loads("matrix 2 2\n1 2\n3\n\ncost uniform 1\n")
    with pytest.raises(DimensionMismatch):
        loads("matrix 1 2\n1 2\n3 4\n\ncost uniform 1\n")


@pytest.mark.parametrize(
    "text",
    [
        "",
        "matrx 1 1\n1\ncost uniform 1\n",
        "matrix 1 1\nx\ncost uniform 1\n",
        "matrix 1 1\n1\ncost weird\n",
        "matrix 1 1\n1\n",
        "matrix a 1\n1\ncost uniform 1\n",
        "matrix 1 1 quad\n1\ncost uniform 1\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        loads(text)


def test_resolve_instance(tmp_path):
    assert resolve_instance("greedy-optimal").name == "greedy-optimal"
    inst = resolve_instance("random:5:6:2", seed=3)
    assert inst.shape == (5, 6) and rank(inst.hidden) == 2
    assert resolve_instance("random:5:6:2:float").hidden.dtype == float
    path = tmp_path / "f.txt"
    save_instance(inst, path)
    assert resolve_instance(str(path)) == inst
