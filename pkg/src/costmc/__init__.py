"""Adaptive exact low-rank matrix completion under observation costs."""
from .algorithms import RecoveryResult, auto_d, ercs, ercs_column_ordered, erhc, verify_recovery
from .baselines import TwoStagePlan, brute_force_optimal, optimality_ratio, two_stage_cost
from .instances import (
    Instance,
    load_instance,
    builtin_fixture,
    random_generic_low_rank,
    random_low_rank,
    save_instance,
)
from .linalg import OrthoBasis, back_project, orthonormal_extend, rank, restricted_residual_norm
from .oracle import Ledger, ObservationOracle, PerColumn, PerEntry, Uniform, submatrix_cost
from .sparsity import SparsityReport, matrix_sparsity, subspace_sparsity, vector_sparsity

__version__ = "0.1.0"
