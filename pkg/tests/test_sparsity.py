import numpy as np
import pytest

from costmc.errors import DimensionCapExceeded, ZeroMatrix
from costmc.instances import random_low_rank
from costmc.linalg import rank, to_exact
from costmc.sparsity import matrix_sparsity, subspace_sparsity, vector_sparsity
from oracles import brute_psi_bar, gauss_rank


@pytest.mark.parametrize(
    "x, expected",
    [
        (to_exact([0, 0, 0]), (0, 3)),
        (to_exact([1, 0, 2, 0]), (2, 2)),
        (to_exact([0, 1, 2, 3]), (3, 1)),
        (np.array([1e-12, 0.5, 0.0]), (1, 2)),
    ],
)
def test_vector_sparsity(x, expected):
    assert vector_sparsity(x) == expected


def test_subspace_examples(suboptimal):
    rep = subspace_sparsity(to_exact([[1], [1], [1], [1]]))
    assert (rep.psi, rep.psi_bar) == (4, 0)
    e1 = to_exact(np.eye(5, dtype=int)[:, :1])
    assert (subspace_sparsity(e1).psi, subspace_sparsity(e1).psi_bar) == (1, 4)
    rep = subspace_sparsity(suboptimal.hidden[:, :2])
    assert (rep.psi, rep.psi_bar) == (3, 1)


def test_matrix_examples(suboptimal):
    rep = matrix_sparsity(suboptimal.hidden)
    assert (rep.psi, rep.psi_bar, rep.rank) == (3, 1, 2)
    assert rep.zero_support == (0,)
    assert list(rep.witness) == [0, 1, 2, 3]
    ones = to_exact(np.ones((3, 3), dtype=int))
    assert matrix_sparsity(ones).psi_bar == 0
    for m in (1, 3, 6):
        rep = matrix_sparsity(to_exact(np.eye(m, dtype=int)))
        assert (rep.psi, rep.psi_bar) == (1, m - 1)


def test_zero_matrix_rejected():
    with pytest.raises(ZeroMatrix):
        matrix_sparsity(to_exact(np.zeros((3, 2), dtype=int)))


def test_cap():
    with pytest.raises(DimensionCapExceeded):
        subspace_sparsity(to_exact(np.ones((23, 1), dtype=int)))
    with pytest.raises(DimensionCapExceeded):
        subspace_sparsity(to_exact(np.ones((5, 1), dtype=int)), cap=4)


def test_against_brute_force_oracle():
    for seed in range(120):
        rng = np.random.default_rng(seed)
        m = int(rng.integers(2, 8))
        r = int(rng.integers(1, min(m, 3) + 1))
        M = random_low_rank(m, r + 1, r, seed=seed, zero_prob=[0, 0.4, 0.7][seed % 3])
        expected = brute_psi_bar(M.tolist())
        flats = matrix_sparsity(M)
        supports = matrix_sparsity(M, method="supports")
        assert flats.psi_bar == supports.psi_bar == expected
        assert flats.zero_support == supports.zero_support


def test_report_invariants():
    for seed in range(60):
        rng = np.random.default_rng(seed)
        m = int(rng.integers(2, 11))
        r = int(rng.integers(1, min(m, 4) + 1))
        M = random_low_rank(m, 5, min(r, 5), seed=seed, zero_prob=0.4)
        rep = matrix_sparsity(M)
        r = rank(M)
        assert rep.psi + rep.psi_bar == m
        assert r - 1 <= rep.psi_bar <= m - 1
        w = rep.witness
        assert sum(1 for v in w if v != 0) == rep.psi
        assert tuple(i for i, v in enumerate(w) if v == 0) == rep.zero_support
        # witness lies in the column space
        assert gauss_rank(np.column_stack([M, w]).T.tolist()) == r


def test_appending_dependent_column_keeps_sparsity():
    for seed in range(40):
        M = random_low_rank(6, 4, 2, seed=seed, zero_prob=0.4)
        extra = M.dot(to_exact([1, -2, 0, 3]))
        assert matrix_sparsity(np.column_stack([M, extra])).psi_bar == matrix_sparsity(M).psi_bar


def test_float_mode_generic_subspace():
    rng = np.random.default_rng(5)
    for r in (1, 2, 3):
        B = rng.standard_normal((8, r))
        rep = subspace_sparsity(B)
        assert rep.psi_bar == r - 1
        assert matrix_sparsity(B, method="supports").psi_bar == r - 1
        # the witness is a unit vector of the column space
        res = rep.witness - B @ np.linalg.lstsq(B, rep.witness, rcond=None)[0]
        assert np.linalg.norm(res) < 1e-10


def test_float_mode_matches_exact_on_integer_input(suboptimal):
    assert matrix_sparsity(suboptimal.hidden.astype(float)).psi_bar == 1
    assert matrix_sparsity(np.eye(4)).psi_bar == 3
