"""Residual judging, uncertainty saturation, spin-relation audits, and the
calibration probe that proves the residual meter actually measures."""

import numpy as np
import pytest

from vaes.algebra import build_A
from vaes.fock import FockSpace, annihilator
from vaes.linops import kron
from vaes.su2 import BetaParams, Su2Rep
from vaes.states import VectorState, normalize
from vaes.vector_states import solve_annihilator, vcs_displacement_form
from vaes.verify import calibration, eigen_residual, sr_check, su2_relations_check

F = FockSpace(64, 8)
REP = Su2Rep(1)
MT = 0.7 * np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
P = BetaParams(beta_plus=0.5 * np.exp(0.4j), beta_minus=0.5 * np.exp(-0.4j), beta_3=0.8)


def _op():
    return kron(annihilator(F), np.eye(REP.dim))


def test_eigen_residual_passes_good_state():
    st = solve_annihilator(F, REP, MT)
    r = eigen_residual(_op(), MT, st, context="unit")
    assert r.passed
    assert r.relative_residual < 1e-12
    assert r.tail_mass < 1e-12
    assert r.guarded_dim == F.checked_dim * REP.dim
    assert len(r.per_component) == 2
    assert r.context == "unit"


def test_eigen_residual_flags_corruption():
    st = solve_annihilator(F, REP, MT)
    bad = st.amplitudes.copy()
    bad[0, 3, 0] += 1e-3
    st_bad = VectorState(
        amplitudes=bad, fock=F, rep=REP, beta=st.beta, mtilde=MT, family=st.family
    )
    r = eigen_residual(_op(), MT, st_bad)
    assert not r.passed
    assert r.relative_residual > 1e-5


def test_eigen_residual_flags_tail_weight():
    st = solve_annihilator(F, REP, MT)
    bad = st.amplitudes.copy()
    bad[0, F.dim - 2, 0] += 0.1  # weight inside the guard band
    st_bad = VectorState(
        amplitudes=normalize(bad), fock=F, rep=REP, beta=st.beta, mtilde=MT,
        family=st.family,
    )
    r = eigen_residual(_op(), MT, st_bad)
    assert r.tail_mass > 1e-4
    assert not r.passed


def test_sr_check_scalar_eigenstate_saturates():
    from vaes.aes import aes_basis

    states, _ = aes_basis(F, REP, P)
    one = states[0][None, :, :]
    k1 = VectorState(
        amplitudes=one, fock=F, rep=REP, beta=P,
        mtilde=np.array([[0.0]]), family="scalar-basis",
    )
    rpt = sr_check(k1, build_A(F, REP, P))
    assert rpt.saturated
    assert rpt.gap < 1e-6
    assert rpt.lhs == pytest.approx(rpt.rhs, abs=1e-6)


def test_sr_check_eigencombination_of_vector_state_saturates():
    # single components of a K = 2 stack are not eigenstates; the left
    # eigenvector combination is, and must saturate
    from vaes.linops import eig

    st = vcs_displacement_form(F, REP, P, MT)
    d = eig(MT)
    combo = sum(d.passing_inverse[0, u] * st.amplitudes[u] for u in range(2))
    k1 = VectorState(
        amplitudes=normalize(combo[None, :, :]), fock=F, rep=REP, beta=P,
        mtilde=np.array([[0.0]]), family="eigencombination",
    )
    rpt = sr_check(k1, build_A(F, REP, P))
    assert rpt.saturated, rpt.gap


def test_sr_check_fock_state_does_not_saturate():
    one = np.zeros((1, F.dim, REP.dim), dtype=complex)
    one[0, 1, 0] = 1.0  # first excited number state
    st = VectorState(
        amplitudes=one, fock=F, rep=REP, beta=BetaParams(),
        mtilde=np.array([[0.0]]), family="fock-control",
    )
    rpt = sr_check(st, _op())
    assert not rpt.saturated
    assert rpt.lhs > rpt.rhs + 1e-3


@pytest.mark.parametrize("twoj", range(1, 9))
def test_su2_relations_check(twoj):
    rpt = su2_relations_check(Su2Rep(twoj))
    assert rpt.passed
    assert rpt.exact_integer
    assert max(rpt.comm_pm, rpt.comm_3p, rpt.comm_3m, rpt.casimir) < 1e-12


def test_calibration_recovers_planted_errors():
    out = calibration(F, REP)
    assert out["passed"]
    for eps, measured in out.items():
        if eps == "passed":
            continue
        assert eps / 3 <= measured <= 3 * eps
