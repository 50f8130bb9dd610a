"""Eigenstates of boson-spin lowering operators, scalar and stacked.

The core objects: a truncated Fock space coupled to a finite spin
multiplet, the combined lowering operator A = a + couplings . J, its
scalar eigenstate families, and K-component stacks solving A Psi =
mtilde Psi for a K x K eigenvalue matrix.
"""

from .aes import aes_basis, aes_general, supercoherent_pair
from .algebra import (
    CommutatorReport,
    Scenario,
    TransformedGenerators,
    build_A,
    commutator_report,
    transformed_generators,
    verify_commutator,
)
from .fock import FockSpace, annihilator, coherent, creation, displacement, squeeze_lift
from .presets import build_preset, catalog
from .quaternion import QuaternionPolar, beta_from_quat, canonical_quaternionic_vcs, k2_passing, quat_to_matrix
from .serialize import read_state, write_state
from .states import VectorState
from .su2 import (
    BetaParams,
    CaseTag,
    Su2Rep,
    b_parameter,
    beta_operator,
    classify,
    generators,
    m_matrix,
    passing_matrix,
    t_matrix_exp,
    t_matrix_jacobi,
)
from .suite import run_suite
from .vector_states import (
    bneq0_family,
    energy_ladder,
    intelligent_family,
    intelligent_polar_form,
    norm_constant_series,
    series_vcs,
    solve_annihilator,
    solve_general,
    vcs_displacement_form,
)
from .verify import (
    ResidualReport,
    SrReport,
    calibration,
    eigen_residual,
    sr_check,
    su2_relations_check,
)

__version__ = "0.1.0"

__all__ = [
    "BetaParams",
    "CaseTag",
    "CommutatorReport",
    "FockSpace",
    "QuaternionPolar",
    "ResidualReport",
    "Scenario",
    "SrReport",
    "Su2Rep",
    "TransformedGenerators",
    "VectorState",
    "aes_basis",
    "aes_general",
    "annihilator",
    "b_parameter",
    "beta_from_quat",
    "beta_operator",
    "bneq0_family",
    "build_A",
    "build_preset",
    "calibration",
    "canonical_quaternionic_vcs",
    "catalog",
    "classify",
    "coherent",
    "commutator_report",
    "creation",
    "displacement",
    "eigen_residual",
    "energy_ladder",
    "generators",
    "intelligent_family",
    "intelligent_polar_form",
    "k2_passing",
    "m_matrix",
    "norm_constant_series",
    "passing_matrix",
    "quat_to_matrix",
    "read_state",
    "run_suite",
    "series_vcs",
    "solve_annihilator",
    "solve_general",
    "sr_check",
    "squeeze_lift",
    "su2_relations_check",
    "supercoherent_pair",
    "t_matrix_exp",
    "t_matrix_jacobi",
    "transformed_generators",
    "vcs_displacement_form",
    "verify_commutator",
    "write_state",
]
