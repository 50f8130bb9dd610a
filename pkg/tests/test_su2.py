"""Spin representation matrices, coupling classification, and the two
independent diagonalization routes for the spin part.
"""

import math
from fractions import Fraction

import numpy as np
import numpy.testing as npt
import pytest

from vaes.su2 import (
    BetaParams,
    CaseTag,
    Su2Rep,
    b_parameter,
    beta_operator,
    casimir,
    classify,
    family_is_normal,
    generators,
    m_matrix,
    passing_matrix,
    t_matrix_exp,
    t_matrix_jacobi,
)


@pytest.mark.parametrize("twoj", range(1, 7))
def test_ladder_entries(twoj):
    rep = Su2Rep(twoj)
    jp, jm, j3 = generators(rep)
    for i in range(twoj):
        c = math.sqrt((twoj - i) * (i + 1))
        assert jp[i + 1, i] == pytest.approx(c)
        assert jm[i, i + 1] == pytest.approx(c)
    npt.assert_allclose(np.diag(j3), [-twoj / 2 + i for i in range(twoj + 1)])
    npt.assert_array_equal(jm, jp.conj().T)


@pytest.mark.parametrize("twoj", range(1, 7))
def test_commutation_and_casimir(twoj):
    rep = Su2Rep(twoj)
    jp, jm, j3 = generators(rep)
    npt.assert_allclose(jp @ jm - jm @ jp, 2.0 * j3, atol=1e-13)
    npt.assert_allclose(j3 @ jp - jp @ j3, jp, atol=1e-13)
    npt.assert_allclose(j3 @ jm - jm @ j3, -jm, atol=1e-13)
    j = twoj / 2.0
    npt.assert_allclose(casimir(rep), j * (j + 1.0) * np.eye(twoj + 1), atol=1e-13)


@pytest.mark.parametrize("twoj", range(1, 9))
def test_ladder_coefficient_integer_identities(twoj):
    # the squared ladder coefficients satisfy two exact integer relations;
    # Fraction arithmetic keeps them exact for any twoj
    for i in range(twoj + 1):
        c_prev = Fraction(i * (twoj - i + 1))
        c_here = Fraction((twoj - i) * (i + 1))
        assert c_prev - c_here == 2 * i - twoj
        assert 4 * c_prev + (2 * i - twoj) * (2 * i - twoj - 2) == twoj * (twoj + 2)


def test_b_parameter():
    p = BetaParams(beta_plus=0.5, beta_minus=0.5, beta_3=0.0)
    assert b_parameter(p) == pytest.approx(1.0)
    p = BetaParams(beta_plus=1.0, beta_minus=-0.25, beta_3=0.0)
    assert b_parameter(p) == pytest.approx(1j)
    assert b_parameter(BetaParams(beta_3=0.7)) == pytest.approx(0.7)


def test_classify_tags():
    assert classify(BetaParams()) is CaseTag.ALL_ZERO
    assert classify(BetaParams(beta=2.0)) is CaseTag.ALL_ZERO
    normal = BetaParams(beta_plus=0.5, beta_minus=0.5, beta_3=0.3)
    assert classify(normal) is CaseTag.B_NONZERO_NORMAL
    assert family_is_normal(normal)
    skew = BetaParams(beta_plus=0.5, beta_minus=0.2, beta_3=0.3)
    assert classify(skew) is CaseTag.B_NONZERO_DIAGONALIZABLE
    assert not family_is_normal(skew)
    # the tag names follow the ladder direction of the surviving coupling
    assert classify(BetaParams(beta_plus=0.5)) is CaseTag.B_ZERO_LOWER
    assert classify(BetaParams(beta_minus=0.5)) is CaseTag.B_ZERO_UPPER
    degenerate = BetaParams(beta_plus=0.5, beta_minus=-0.125, beta_3=0.5)
    assert abs(b_parameter(degenerate)) < 1e-12
    assert classify(degenerate) is CaseTag.B_ZERO_FULL


def test_beta_operator_structure():
    rep = Su2Rep(2)
    p = BetaParams(beta_plus=0.4 + 0.1j, beta_minus=0.2, beta_3=0.6)
    jp, jm, j3 = generators(rep)
    npt.assert_array_equal(
        beta_operator(rep, p), p.beta_plus * jm + p.beta_minus * jp + p.beta_3 * j3
    )


def test_m_matrix_conventions():
    # component recursion flips the sign of the ladder couplings relative
    # to the operator; "ode" is the same matrix transposed and reversed
    rep = Su2Rep(2)
    p = BetaParams(beta=0.1, beta_plus=0.4 + 0.1j, beta_minus=0.2, beta_3=0.6)
    jp, jm, j3 = generators(rep)
    want = 0.1 * np.eye(3) - p.beta_plus * jm - p.beta_minus * jp + p.beta_3 * j3
    npt.assert_array_equal(m_matrix(rep, p), want)
    npt.assert_array_equal(m_matrix(rep, p, convention="ode"), want.T[::-1, ::-1])
    with pytest.raises(ValueError):
        m_matrix(rep, p, convention="column")


def _eigencolumn_gap(rep, p, t):
    """Worst residual of the eigencolumn equation M t_m = b*m t_m."""
    bop = beta_operator(rep, p)
    b = b_parameter(p)
    mvals = np.array([-rep.twoj / 2 + i for i in range(rep.dim)])
    resid = bop @ t - t @ np.diag(b * mvals)
    return np.linalg.norm(resid) / max(1.0, np.linalg.norm(t))


@pytest.mark.parametrize("twoj", range(1, 7))
def test_dual_routes_agree(twoj):
    """The explicit-sum and exponential diagonalizers are independent
    implementations; they must agree and both must satisfy the eigencolumn
    equation.
    """
    rep = Su2Rep(twoj)
    rng = np.random.default_rng(100 + twoj)
    for _ in range(25):
        p = BetaParams(
            beta_plus=rng.uniform(0.2, 1.0) * np.exp(2j * np.pi * rng.random()),
            beta_minus=rng.uniform(0.2, 1.0) * np.exp(2j * np.pi * rng.random()),
            beta_3=rng.uniform(0.2, 1.0) * np.exp(2j * np.pi * rng.random()),
        )
        if abs(b_parameter(p)) < 0.1:
            continue
        t1, meta1 = t_matrix_jacobi(rep, p)
        t2, meta2 = t_matrix_exp(rep, p)
        assert meta1["b"] == pytest.approx(meta2["b"])
        scale = max(1.0, np.abs(t1).max())
        assert np.abs(t1 - t2).max() / scale < 1e-9
        assert _eigencolumn_gap(rep, p, t1) < 1e-10


def test_jacobi_route_halfspin_hand_values():
    # twoj=1, b3=0, equal real ladder couplings: eigenvectors are the
    # 45-degree mixes (1, +-1)/sqrt(2) with eigenvalues -+1/2
    rep = Su2Rep(1)
    p = BetaParams(beta_plus=0.5, beta_minus=0.5, beta_3=0.0)
    t, meta = t_matrix_jacobi(rep, p)
    assert meta["b"] == pytest.approx(1.0)
    s = 1.0 / math.sqrt(2.0)
    npt.assert_allclose(t, [[s, s], [-s, s]], atol=1e-12)
    assert _eigencolumn_gap(rep, p, t) < 1e-14


def test_passing_matrix_unitary_for_normal_family():
    rep = Su2Rep(3)
    rng = np.random.default_rng(5)
    for _ in range(20):
        r = rng.uniform(0.3, 1.0)
        sigma = rng.uniform(-np.pi, np.pi)
        delta = rng.uniform(-np.pi, np.pi)
        p = BetaParams(
            beta_plus=r * np.exp(1j * (delta + sigma) / 2),
            beta_minus=r * np.exp(1j * (delta - sigma) / 2),
            beta_3=rng.uniform(0.2, 1.0) * np.exp(1j * delta / 2),
        )
        assert family_is_normal(p)
        t, _ = passing_matrix(rep, p)
        npt.assert_allclose(t @ t.conj().T, np.eye(rep.dim), atol=1e-10)


def test_passing_matrix_rejects_b_zero():
    with pytest.raises(ValueError):
        passing_matrix(Su2Rep(2), BetaParams(beta_plus=0.5))


def test_rejects_negative_twoj():
    with pytest.raises(ValueError):
        Su2Rep(-2)
