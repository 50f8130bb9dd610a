"""Coupled-mode operator assembly, its commutator fingerprint, and the
frame transforms that recast degenerate couplings as a pure lowering term.
"""

import cmath

import numpy as np
import numpy.testing as npt
import pytest

from vaes.algebra import (
    Scenario,
    build_A,
    commutator_report,
    extended_x_beta,
    extended_x_beta_degenerate,
    full_noncanonical_beta,
    full_noncanonical_beta_degenerate,
    lift_fock,
    lift_spin,
    noncanonical_rho_beta,
    noncanonical_rho_beta_degenerate,
    transformed_generators,
    verify_commutator,
)
from vaes.fock import FockSpace, annihilator
from vaes.su2 import BetaParams, Su2Rep, b_parameter, beta_operator, generators


def test_build_A_block_structure():
    f, rep = FockSpace(12, 2), Su2Rep(2)
    p = BetaParams(beta=0.9, beta_plus=0.4 + 0.1j, beta_minus=0.2, beta_3=0.6)
    a = build_A(f, rep, p)
    want = lift_fock(annihilator(f), rep) + lift_spin(f, beta_operator(rep, p))
    npt.assert_array_equal(a, want)  # the scalar offset never enters
    assert a.shape == (12 * 3, 12 * 3)


def test_lifts_commute():
    f, rep = FockSpace(8, 2), Su2Rep(1)
    jp, jm, j3 = generators(rep)
    lhs = lift_fock(annihilator(f), rep) @ lift_spin(f, j3)
    rhs = lift_spin(f, j3) @ lift_fock(annihilator(f), rep)
    npt.assert_allclose(lhs, rhs, atol=1e-13)


def test_commutator_identities():
    rng = np.random.default_rng(11)
    for _ in range(30):
        p = BetaParams(
            beta_plus=complex(*rng.standard_normal(2)),
            beta_minus=complex(*rng.standard_normal(2)),
            beta_3=complex(*rng.standard_normal(2)),
        )
        r = commutator_report(p)
        assert r.x == pytest.approx(abs(p.beta_minus) ** 2 - abs(p.beta_plus) ** 2)
        c = p.beta_3 * p.beta_plus.conjugate() - p.beta_3.conjugate() * p.beta_minus
        assert r.c_plus == pytest.approx(c)
        assert r.rho == pytest.approx(abs(c))
        if r.rho > 1e-12:
            assert r.nu == pytest.approx(cmath.phase(c))


def test_verify_commutator_matches_matrix():
    f, rep = FockSpace(12, 2), Su2Rep(3)
    rng = np.random.default_rng(3)
    for _ in range(10):
        p = BetaParams(
            beta_plus=complex(*rng.standard_normal(2)),
            beta_minus=complex(*rng.standard_normal(2)),
            beta_3=complex(*rng.standard_normal(2)),
        )
        assert verify_commutator(f, rep, p) < 1e-12


@pytest.mark.parametrize(
    "make,args,scenario,degenerate",
    [
        (extended_x_beta, (0.3, 0.7, 0.4, 1.1), Scenario.EXTENDED_X, False),
        (extended_x_beta_degenerate, (-0.2, 0.5), Scenario.EXTENDED_X, True),
        (noncanonical_rho_beta, (0.6, 0.8, 0.3, 0.9, 0.2), Scenario.NONCANONICAL_RHO, False),
        (noncanonical_rho_beta_degenerate, (0.6, 0.3, 0.9, 1), Scenario.NONCANONICAL_RHO, True),
        (full_noncanonical_beta, (0.5, 0.7, 0.9), Scenario.FULL_NONCANONICAL, False),
        (full_noncanonical_beta_degenerate, (0.5, 0.7, 0.2, 0.8, 0), Scenario.FULL_NONCANONICAL, True),
    ],
)
def test_scenario_generators(make, args, scenario, degenerate):
    p = make(*args)
    r = commutator_report(p)
    assert r.scenario is scenario
    if degenerate:
        assert abs(b_parameter(p)) < 1e-7
    if scenario is Scenario.EXTENDED_X:
        assert r.x == pytest.approx(args[0])
        assert r.rho == pytest.approx(0.0, abs=1e-14)
    if scenario is Scenario.NONCANONICAL_RHO:
        assert r.x == pytest.approx(0.0, abs=1e-14)
        assert r.rho > 0.1


def test_canonical_scenarios():
    assert commutator_report(BetaParams()).scenario is Scenario.CANONICAL
    normal = BetaParams(beta_plus=0.5, beta_minus=0.5, beta_3=0.3)
    assert commutator_report(normal).scenario is Scenario.CANONICAL


@pytest.mark.parametrize("twoj", [1, 2, 3])
@pytest.mark.parametrize("k", [0, 1])
def test_transformed_generators(twoj, k):
    rep = Su2Rep(twoj)
    rng = np.random.default_rng(40 + 10 * twoj + k)
    for make in (noncanonical_rho_beta_degenerate, full_noncanonical_beta_degenerate):
        if make is noncanonical_rho_beta_degenerate:
            p = make(rng.uniform(0.3, 1.0), rng.uniform(-2, 2), rng.uniform(-2, 2), k)
        else:
            p = make(
                rng.uniform(0.3, 1.0),
                rng.uniform(0.3, 1.0),
                rng.uniform(-2, 2),
                rng.uniform(-2, 2),
                k,
            )
        tg = transformed_generators(rep, p, k=k)
        assert tg.k == k
        assert abs(tg.b_transformed - 1.0) < 1e-12
        # similarity transform preserves the algebra
        comm = tg.j_plus @ tg.j_minus - tg.j_minus @ tg.j_plus
        npt.assert_allclose(comm, 2.0 * tg.j_3, atol=1e-11)
        npt.assert_allclose(tg.j_3 @ tg.j_plus - tg.j_plus @ tg.j_3, tg.j_plus, atol=1e-11)
        # the original spin part collapses to a single lowering term
        gap = np.linalg.norm(beta_operator(rep, p) - tg.b_plus * tg.j_minus)
        assert gap < 1e-11


def test_transformed_generators_both_branches_differ():
    rep = Su2Rep(2)
    p = noncanonical_rho_beta_degenerate(0.6, 0.3, 0.9, 1)
    t0 = transformed_generators(rep, p, k=0)
    t1 = transformed_generators(rep, p, k=1)
    # both are valid frames for the same couplings but not the same frame
    assert np.linalg.norm(t0.j_minus - t1.j_minus) > 1e-3
    for tg in (t0, t1):
        assert np.linalg.norm(beta_operator(rep, p) - tg.b_plus * tg.j_minus) < 1e-11


def test_transformed_generators_rejects_nondegenerate():
    p = BetaParams(beta_plus=0.5, beta_minus=0.5, beta_3=0.3)  # b != 0
    with pytest.raises(ValueError):
        transformed_generators(Su2Rep(2), p, k=0)
