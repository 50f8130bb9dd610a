"""The combined lowering operator, its commutator, and coupling scenarios.

The operator under study is A = a (x) I + I (x) B with B the spin coupling
matrix of su2.beta_operator.  Its commutator with its adjoint is

    [A, A†] = I + 2 x J_3 + c J_plus + conj(c) J_minus   (spin factor lifted)

with x = |beta_minus|² - |beta_plus|² and c = beta_3 conj(beta_plus) -
conj(beta_3) beta_minus.  The (x, c) pair sorts couplings into four
commutation scenarios; two degenerate families admit a change of spin basis
that restores a canonical-looking commutator, built by
transformed_generators.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .fock import FockSpace, annihilator
from .linops import expm, kron
from .su2 import BetaParams, Su2Rep, b_parameter, generators

__all__ = [
    "Scenario",
    "CommutatorReport",
    "TransformedGenerators",
    "lift_fock",
    "lift_spin",
    "build_A",
    "commutator_report",
    "verify_commutator",
    "transformed_generators",
    "extended_x_beta",
    "extended_x_beta_degenerate",
    "noncanonical_rho_beta",
    "noncanonical_rho_beta_degenerate",
    "full_noncanonical_beta",
    "full_noncanonical_beta_degenerate",
]


class Scenario(enum.Enum):
    CANONICAL = "canonical"
    EXTENDED_X = "extended-x"
    NONCANONICAL_RHO = "noncanonical-rho"
    FULL_NONCANONICAL = "full-noncanonical"


@dataclass(frozen=True)
class CommutatorReport:
    """Closed-form content of [A, A†] for a coupling family."""

    x: float
    c_plus: complex
    rho: float
    nu: float
    scenario: Scenario


def lift_fock(op: np.ndarray, rep: Su2Rep) -> np.ndarray:
    """Boson operator acting as op (x) I on the composite space."""
    return kron(op, np.eye(rep.dim))


def lift_spin(f: FockSpace, op: np.ndarray) -> np.ndarray:
    """Spin operator acting as I (x) op on the composite space."""
    return kron(np.eye(f.dim), op)


def build_A(f: FockSpace, rep: Su2Rep, p: BetaParams) -> np.ndarray:
    """A = a (x) I + I (x) (beta_plus J_minus + beta_minus J_plus + beta_3 J_3).

    The scalar offset p.beta is an eigenvalue, not part of the operator.
    """
    jp, jm, j3 = generators(rep)
    spin = p.beta_plus * jm + p.beta_minus * jp + p.beta_3 * j3
    return lift_fock(annihilator(f), rep) + lift_spin(f, spin)


def commutator_report(p: BetaParams, tol: float = 1e-10) -> CommutatorReport:
    """Symbolic commutator content and scenario tag for the couplings.

    Values within [tol, 1e-6] (relative) of the x = 0 or rho = 0 boundary
    emit a warning, since the scenario tag then hangs on the tolerance.
    """
    x = abs(p.beta_minus) ** 2 - abs(p.beta_plus) ** 2
    c_plus = p.beta_3 * np.conj(p.beta_plus) - np.conj(p.beta_3) * p.beta_minus
    rho = abs(c_plus)
    nu = cmath.phase(c_plus) if rho > 0 else 0.0

    s2 = p.scale() ** 2
    x_zero = abs(x) <= tol * s2
    rho_zero = rho <= tol * s2
    for val, name in ((abs(x), "|x|"), (rho, "rho")):
        if s2 > 0 and tol * s2 < val <= 1e-6 * s2:
            warnings.warn(
                f"{name} sits in the 1e-6 warning band around zero; "
                "scenario tag is tolerance-sensitive",
                stacklevel=2,
            )
    if x_zero and rho_zero:
        scen = Scenario.CANONICAL
    elif rho_zero:
        scen = Scenario.EXTENDED_X
    elif x_zero:
        scen = Scenario.NONCANONICAL_RHO
    else:
        scen = Scenario.FULL_NONCANONICAL
    return CommutatorReport(x=float(x), c_plus=complex(c_plus), rho=rho, nu=nu, scenario=scen)


def verify_commutator(f: FockSpace, rep: Su2Rep, p: BetaParams) -> float:
    """Relative Frobenius gap between [A, A†] and its closed form.

    Both sides are restricted to Fock levels below dim - guard before
    comparison: the truncated [a, a†] is off by -(dim-1) in its top corner,
    which the guard band exists to hide.
    """
    rpt = commutator_report(p)
    a = build_A(f, rep, p)
    comm = a @ a.conj().T - a.conj().T @ a

    jp, jm, j3 = generators(rep)
    predicted = lift_fock(np.eye(f.dim), rep) + lift_spin(
        f, 2 * rpt.x * j3 + rpt.c_plus * jp + np.conj(rpt.c_plus) * jm
    )

    keep = np.arange(f.dim * rep.dim) // rep.dim < f.checked_dim
    diff = (comm - predicted)[np.ix_(keep, keep)]
    ref = predicted[np.ix_(keep, keep)]
    return float(np.linalg.norm(diff, "fro") / np.linalg.norm(ref, "fro"))


# ---------------------------------------------------------------------------
# Coupling generators for the commutation scenarios.  Angles are phases of
# beta_plus / beta_minus / beta_3; magnitudes are parameterized so each
# family lands exactly on its defining constraint.
# ---------------------------------------------------------------------------


def extended_x_beta(
    x: float, alpha: float, theta_plus: float, theta_minus: float
) -> BetaParams:
    """beta_3 = 0 family with x != 0 and b != 0.

    x > 0 puts the larger magnitude on beta_minus (sinh/cosh split); x < 0
    mirrors it.  alpha > 0 keeps both couplings nonzero.
    """
    if x == 0:
        raise ValueError("extended_x_beta needs x != 0")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    r = math.sqrt(abs(x))
    if x > 0:
        bp = r * math.sinh(alpha) * cmath.exp(1j * theta_plus)
        bm = r * math.cosh(alpha) * cmath.exp(1j * theta_minus)
    else:
        bp = r * math.cosh(alpha) * cmath.exp(1j * theta_plus)
        bm = r * math.sinh(alpha) * cmath.exp(1j * theta_minus)
    return BetaParams(beta_plus=bp, beta_minus=bm, beta_3=0.0)


def extended_x_beta_degenerate(x: float, theta: float) -> BetaParams:
    """beta_3 = 0 family with x != 0 and b = 0 (one coupling vanishes)."""
    if x == 0:
        raise ValueError("extended_x_beta_degenerate needs x != 0")
    r = math.sqrt(abs(x))
    if x > 0:
        return BetaParams(beta_minus=r * cmath.exp(1j * theta))
    return BetaParams(beta_plus=r * cmath.exp(1j * theta))


def noncanonical_rho_beta(
    r: float, r3: float, theta_plus: float, theta_minus: float, theta3: float
) -> BetaParams:
    """|beta_plus| = |beta_minus| = r with beta_3 != 0; rho = 2 r r3
    |sin(theta3 - (theta_plus+theta_minus)/2)|."""
    if r <= 0 or r3 <= 0:
        raise ValueError("magnitudes must be positive")
    return BetaParams(
        beta_plus=r * cmath.exp(1j * theta_plus),
        beta_minus=r * cmath.exp(1j * theta_minus),
        beta_3=r3 * cmath.exp(1j * theta3),
    )


def noncanonical_rho_beta_degenerate(
    r: float, theta_plus: float, theta_minus: float, k: int
) -> BetaParams:
    """The rho != 0 family pinned to b = 0: r3 = 2r and theta3 offset by
    (k + 1/2) pi from the mean phase, k in {0, 1}."""
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")
    sigma = (theta_plus + theta_minus) / 2.0
    theta3 = sigma + (k + 0.5) * math.pi
    return noncanonical_rho_beta(r, 2 * r, theta_plus, theta_minus, theta3)


def full_noncanonical_beta(
    r_plus: float,
    r_minus: float,
    r3: float,
    theta_plus: float = 0.0,
    theta_minus: float = 0.0,
    theta3: float = 0.0,
) -> BetaParams:
    """Generic x != 0, rho != 0 couplings; single-zero patterns allowed."""
    return BetaParams(
        beta_plus=r_plus * cmath.exp(1j * theta_plus),
        beta_minus=r_minus * cmath.exp(1j * theta_minus),
        beta_3=r3 * cmath.exp(1j * theta3),
    )


def full_noncanonical_beta_degenerate(
    r_plus: float, r_minus: float, theta_plus: float, theta_minus: float, k: int
) -> BetaParams:
    """x != 0, rho != 0 family pinned to b = 0: r3 = 2 sqrt(r+ r-) and
    theta3 = (theta_plus+theta_minus)/2 + (k + 1/2) pi, k in {0, 1}."""
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")
    if r_plus <= 0 or r_minus <= 0 or r_plus == r_minus:
        raise ValueError("need distinct positive magnitudes")
    sigma = (theta_plus + theta_minus) / 2.0
    return BetaParams(
        beta_plus=r_plus * cmath.exp(1j * theta_plus),
        beta_minus=r_minus * cmath.exp(1j * theta_minus),
        beta_3=2 * math.sqrt(r_plus * r_minus) * cmath.exp(1j * (sigma + (k + 0.5) * math.pi)),
    )


@dataclass(frozen=True)
class TransformedGenerators:
    """Rotated spin frame restoring a canonical-shaped commutator.

    j_plus/j_minus/j_3 satisfy the su(2) relations; the original operator
    is A = a + b_plus * j_minus, and the coupling decomposition of j_3 in
    the original generator basis has unit discriminant root
    (b_transformed).  ``t`` maps the standard basis to j_3 eigenvectors:
    j_3 @ t[:, i] = m_i t[:, i].
    """

    j_plus: np.ndarray
    j_minus: np.ndarray
    j_3: np.ndarray
    b_plus: complex
    j3_coupling: BetaParams
    b_transformed: complex
    t: np.ndarray
    k: int


def transformed_generators(
    rep: Su2Rep, p: BetaParams, k: int, tol: float = 1e-10
) -> TransformedGenerators:
    """Second spin frame for the b = 0 families with rho != 0.

    Valid exactly when r3 = 2 sqrt(r+ r-) and theta3 = (theta_plus +
    theta_minus)/2 + (k + 1/2) pi with both beta_plus, beta_minus nonzero
    (equal magnitudes allowed).  k must be supplied by the caller; it is
    not inferable from the couplings modulo 2 pi.
    """
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")
    rp, rm, r3 = abs(p.beta_plus), abs(p.beta_minus), abs(p.beta_3)
    s = p.scale()
    if rp <= tol * s or rm <= tol * s or r3 <= tol * s:
        raise ValueError("transformed frame needs all three couplings nonzero")
    if abs(r3 - 2 * math.sqrt(rp * rm)) > tol * s:
        raise ValueError("couplings do not satisfy r3 = 2 sqrt(r+ r-)")
    tp, tm, t3 = (
        cmath.phase(p.beta_plus),
        cmath.phase(p.beta_minus),
        cmath.phase(p.beta_3),
    )
    sigma = (tp + tm) / 2.0
    # The half-sum phase is only defined modulo pi from the wrapped
    # coupling phases; pick the branch that realizes the requested k (the
    # other branch belongs to the complementary k with J_minus negated).
    phase_gap = (t3 - sigma - (k + 0.5) * math.pi) % (2 * math.pi)
    gap_here = min(phase_gap, 2 * math.pi - phase_gap)
    gap_flip = abs(phase_gap - math.pi)
    if gap_here <= tol:
        flip = 1.0
    elif gap_flip <= tol:
        sigma += math.pi
        flip = -1.0
    else:
        raise ValueError(
            "beta_3 phase does not match the b = 0 alignment for either "
            "sigma branch of this k"
        )

    jp, jm, j3 = generators(rep)
    ssum = rp + rm
    root = math.sqrt(rp * rm)
    sign = (-1) ** k
    ep, em = flip * cmath.exp(1j * (tp - tm) / 2), flip * cmath.exp(-1j * (tp - tm) / 2)

    new_jm = (rp * ep * jm + rm * em * jp + 2 * root * sign * 1j * j3) / ssum
    new_jp = new_jm.conj().T
    new_j3 = ((rp - rm) * j3 - root * sign * 1j * (em * jp - ep * jm)) / ssum

    # Coupling decomposition of new_j3 in the original frame; its
    # discriminant root is exactly 1.
    coup = BetaParams(
        beta_plus=root * sign * 1j * ep / ssum,
        beta_minus=-root * sign * 1j * em / ssum,
        beta_3=(rp - rm) / ssum,
    )
    t = expm(1j * math.atan(math.sqrt(rm / rp)) * sign * (em * jp + ep * jm))
    return TransformedGenerators(
        j_plus=new_jp,
        j_minus=new_jm,
        j_3=new_j3,
        b_plus=ssum * cmath.exp(1j * sigma),
        j3_coupling=coup,
        b_transformed=b_parameter(coup),
        t=t,
        k=k,
    )
