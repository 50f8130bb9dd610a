"""Multi-component eigenstate families and the equalities between their
independently derived construction routes.
"""

import numpy as np
import numpy.testing as npt
import pytest

from vaes.algebra import build_A
from vaes.fock import FockSpace, annihilator
from vaes.linops import kron
from vaes.states import normalize
from vaes.su2 import BetaParams, Su2Rep
from vaes.vector_states import (
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
from vaes.verify import eigen_residual

F = FockSpace(64, 8)
REP = Su2Rep(1)

# a normal eigenvalue matrix (circulant) and a non-normal diagonalizable one
MT_NORMAL = 0.7 * np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
MT_SKEW = np.array([[0.3, 0.2], [-0.2, 0.3]], dtype=complex)
MT_NONNORMAL = np.array([[0.5, 0.4], [0.0, -0.3]], dtype=complex)

# normal spin couplings with b != 0: equal ladder magnitudes, aligned phases
P_NORMAL = BetaParams(
    beta_plus=0.5 * np.exp(0.4j),
    beta_minus=0.5 * np.exp(-0.4j),
    beta_3=0.8,
)
P_SKEW = BetaParams(beta_plus=0.6, beta_minus=0.25, beta_3=0.4 + 0.1j)


def _fidelity(s1, s2):
    a = normalize(s1.amplitudes).reshape(-1)
    b = normalize(s2.amplitudes).reshape(-1)
    return abs(np.vdot(a, b))


def _assert_solves(state, p=None):
    op = (
        kron(annihilator(state.fock), np.eye(state.rep.dim))
        if p is None
        else build_A(state.fock, state.rep, p)
    )
    r = eigen_residual(op, state.mtilde, state)
    assert r.passed, (state.family, r.relative_residual, r.tail_mass)
    return r


@pytest.mark.parametrize("mt", [MT_NORMAL, MT_SKEW, MT_NONNORMAL], ids=["normal", "skew", "upper"])
def test_solve_annihilator(mt):
    st = solve_annihilator(F, REP, mt)
    assert st.k_components == 2
    assert st.amplitudes.shape == (2, F.dim, REP.dim)
    _assert_solves(st)


def test_solve_annihilator_jordan_block():
    # non-diagonalizable eigenvalue matrices take the Jordan-chain route
    st = solve_annihilator(F, REP, np.array([[0.3, 1.0], [0.0, 0.3]], dtype=complex))
    assert st.family == "supercoherent-pair"
    assert st.meta["defective"] is True
    _assert_solves(st)


def test_series_route_equals_direct_route():
    """Recursive series and eigen-decomposition construction must agree
    once the integration constants are matched through the passing matrix.
    """
    from vaes.linops import eig

    for mt in (MT_NORMAL, MT_SKEW):
        d = eig(mt)
        pinv = d.passing_inverse
        st_series = series_vcs(F, REP, mt)
        mi = st_series.meta["m_indices"]
        k = mt.shape[0]
        table = np.zeros((k, REP.dim), dtype=complex)
        for s in range(k):
            for r in range(k):
                table[s, mi[r]] += pinv[s, r]
        st_direct = solve_annihilator(F, REP, mt, constants=table)
        assert _fidelity(st_series, st_direct) == pytest.approx(1.0, abs=1e-12)
        _assert_solves(st_series)


def test_displacement_route_equals_general_route():
    for mt in (MT_NORMAL, MT_SKEW):
        st_disp = vcs_displacement_form(F, REP, P_NORMAL, mt)
        st_gen = solve_general(F, REP, P_NORMAL, mt, constants="displacement")
        assert _fidelity(st_disp, st_gen) == pytest.approx(1.0, abs=1e-12)
        _assert_solves(st_disp, P_NORMAL)


def test_bneq0_route_equals_displacement_route():
    # master-equation construction; requires a normal eigenvalue matrix
    st_master = bneq0_family(F, REP, P_NORMAL, MT_NORMAL)
    st_disp = vcs_displacement_form(F, REP, P_NORMAL, MT_NORMAL)
    assert _fidelity(st_master, st_disp) == pytest.approx(1.0, abs=1e-12)
    _assert_solves(st_master, P_NORMAL)


def test_solve_general_nonnormal_couplings():
    st = solve_general(F, REP, P_SKEW, MT_SKEW)
    _assert_solves(st, P_SKEW)


def test_solve_general_rejects_b_zero_displacement_rule():
    p0 = BetaParams(beta_plus=0.5)  # b = 0
    with pytest.raises(ValueError):
        solve_general(F, REP, p0, MT_NORMAL, constants="displacement")
    with pytest.raises(ValueError):
        solve_general(F, REP, P_NORMAL, MT_NORMAL, constants="no-such-rule")


def test_constants_table_shape_checked():
    with pytest.raises(ValueError):
        solve_annihilator(F, REP, MT_NORMAL, constants=np.ones((3, 5)))


def test_intelligent_family_routes():
    p = BetaParams(beta_plus=0.8)
    st = intelligent_family(F, Su2Rep(2), p, 0.7 * np.array([[0, 1], [1, 0]]), m_list=[-1, -1])
    _assert_solves(st, p)
    st2 = intelligent_polar_form(F, Su2Rep(2), p, 0.7 * np.array([[0, 1], [1, 0]]))
    _assert_solves(st2, p)


def test_m_list_selects_spin_levels():
    # labels are magnetic numbers, +1/2 maps to index 1 for spin 1/2
    st = solve_annihilator(F, REP, MT_NORMAL, m_list=[0.5, 0.5])
    assert st.meta["m_indices"] == [1, 1]
    _assert_solves(st)
    with pytest.raises(ValueError):
        solve_annihilator(F, REP, MT_NORMAL, m_list=[5, 0.5])
    with pytest.raises(ValueError):
        solve_annihilator(F, REP, MT_NORMAL, m_list=[0.5])


def test_norm_constant_series_positive():
    ground = vcs_displacement_form(F, REP, P_NORMAL, MT_NORMAL)
    c = norm_constant_series(MT_NORMAL, ground.amplitudes)
    assert c > 0


def test_energy_ladder_rayleigh_quotients():
    ground = vcs_displacement_form(F, REP, P_NORMAL, np.zeros((2, 2), dtype=complex))
    states, rayleigh = energy_ladder(F, REP, P_NORMAL, ground, nmax=4)
    assert states.shape[0] == 5
    for n in range(5):
        assert rayleigh[n] == pytest.approx(n, abs=1e-6)
