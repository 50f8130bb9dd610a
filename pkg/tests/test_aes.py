"""Scalar eigenstate families: one state per magnetic label, residuals
against the defining operator, and the closed-form squared norms.
"""

import numpy as np
import numpy.testing as npt
import pytest

import vaes.aes as aes
from vaes.aes import (
    aes_basis,
    aes_general,
    normalization_b0_full,
    normalization_b0_lower,
    normalization_b0_upper,
    supercoherent_pair,
)
from vaes.algebra import build_A
from vaes.fock import FockSpace, coherent
from vaes.su2 import BetaParams, CaseTag, Su2Rep, b_parameter, generators
from vaes.states import norm

F = FockSpace(64, 8)

FAMILIES = {
    "all-zero": BetaParams(beta=0.8 - 0.3j),
    "normal": BetaParams(beta=0.2, beta_plus=0.4 + 0.2j, beta_minus=0.4 - 0.2j, beta_3=0.5),
    "diagonalizable": BetaParams(beta=0.2, beta_plus=0.7, beta_minus=0.2, beta_3=0.4j),
    "lower": BetaParams(beta=0.3, beta_plus=0.6),
    "upper": BetaParams(beta=0.3, beta_minus=0.6),
    "full": BetaParams(beta=0.2, beta_plus=0.5, beta_minus=-0.2, beta_3=np.sqrt(0.4)),
}


def _residual(f, rep, p, state, eigenvalue):
    op = build_A(f, rep, p)
    flat = state.reshape(-1)
    r = (op @ flat - eigenvalue * flat).reshape(f.dim, rep.dim)
    return np.linalg.norm(r[: f.checked_dim])


@pytest.mark.parametrize("name", list(FAMILIES))
@pytest.mark.parametrize("twoj", [1, 2, 3])
def test_basis_states_are_eigenstates(name, twoj):
    p = FAMILIES[name]
    rep = Su2Rep(twoj)
    states, meta = aes_basis(F, rep, p)
    assert states.shape == (rep.dim, F.dim, rep.dim)
    # every basis state shares the single eigenvalue beta: the coherent
    # displacement beta - m*b cancels the spin eigenvalue m*b
    for i in range(rep.dim):
        assert abs(np.linalg.norm(states[i]) - 1.0) < 1e-12
        assert _residual(F, rep, p, states[i], p.beta) < 1e-10


def test_full_family_is_degenerate():
    p = FAMILIES["full"]
    assert abs(b_parameter(p)) < 1e-12
    from vaes.su2 import classify

    assert classify(p) is CaseTag.B_ZERO_FULL


def test_all_zero_gives_coherent_columns():
    p = FAMILIES["all-zero"]
    rep = Su2Rep(2)
    states, meta = aes_basis(F, rep, p)
    assert meta["case"] is CaseTag.ALL_ZERO
    coh = coherent(F, p.beta)
    for i in range(rep.dim):
        npt.assert_allclose(states[i, :, i], coh, atol=1e-14)


def test_general_combination():
    p = FAMILIES["lower"]
    rep = Su2Rep(2)
    coeffs = [0.5, -0.3 + 0.2j, 1.0]
    psi = aes_general(F, rep, p, coeffs)
    assert abs(np.linalg.norm(psi) - 1.0) < 1e-12
    assert _residual(F, rep, p, psi, p.beta) < 1e-10
    with pytest.raises(ValueError):
        aes_general(F, rep, p, [1.0, 2.0])  # wrong length


@pytest.mark.parametrize("twoj", [1, 2, 3, 4])
def test_closed_form_norms_match_series(twoj):
    """The closed-form squared norms must equal the norm of the raw series."""
    rep = Su2Rep(twoj)
    jp, jm, _ = generators(rep)
    cases = [
        ("lower", FAMILIES["lower"], normalization_b0_lower),
        ("upper", FAMILIES["upper"], normalization_b0_upper),
        ("full", FAMILIES["full"], normalization_b0_full),
    ]
    for name, p, closed in cases:
        for i in range(rep.dim):
            twom = -twoj + 2 * i
            c = np.zeros((F.dim, rep.dim), dtype=complex)
            c[0, i] = 1.0
            if name == "lower":
                series = aes._ladder_series(F, rep, p.beta_plus, p.beta, jm, c)
            elif name == "upper":
                series = aes._ladder_series(F, rep, p.beta_minus, p.beta, jp, c)
            else:
                series = aes._ladder_series(F, rep, p.beta_plus, p.beta, jm, c)
                series = aes._theta_series(rep, p.beta_3 / (2 * p.beta_plus), series)
            got = norm(series) ** 2
            want = closed(rep, p, twom)
            assert got == pytest.approx(want, rel=1e-12), (name, twoj, twom)


def test_supercoherent_pair_solves_jordan_block():
    rep = Su2Rep(1)
    beta, beta_plus = 0.5, 1.0
    st = supercoherent_pair(F, rep, beta, beta_plus, [1.0, 0.0], [0.0, 1.0])
    assert st.amplitudes.shape == (2, F.dim, rep.dim)
    op = build_A(F, rep, st.beta)
    mt = st.mtilde
    npt.assert_array_equal(mt, [[beta, -beta_plus], [0.0, beta]])
    # coupled residual: A psi_u - sum_v mt[u,v] psi_v
    for u in range(2):
        r = (op @ st.amplitudes[u].reshape(-1)).reshape(F.dim, rep.dim)
        r = r - sum(mt[u, v] * st.amplitudes[v] for v in range(2))
        assert np.linalg.norm(r[: F.checked_dim]) < 1e-10


def test_supercoherent_pair_validates_weights():
    with pytest.raises(ValueError):
        supercoherent_pair(F, Su2Rep(1), 0.5, 1.0, [1.0], [0.0, 1.0])
