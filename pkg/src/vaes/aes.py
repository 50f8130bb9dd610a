"""Single-component eigenstates of the boson+spin lowering operator.

For fixed couplings, the eigenstates of A with eigenvalue beta split into
2j+1 independent basis states.  Their shape depends only on the case tag:

* b != 0: a displaced coherent state labeled beta - m b paired with the
  m-th diagonalizer column.
* b = 0 with one coupling: a terminating series of spin ladder powers
  against shifted creation-operator powers, displaced by beta.
* b = 0 with all three couplings: the same series dressed by a second
  terminating ladder series in theta = beta_3 / (2 beta_plus).

The closed-form squared norms of the b = 0 families are implemented next
to the states so they can be checked against the numeric norms.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .fock import FockSpace, coherent, creation, displacement
from .linops import expm
from .states import VectorState, normalize, phase_fix_highest
from .su2 import (
    BetaParams,
    CaseTag,
    Su2Rep,
    classify,
    generators,
    passing_matrix,
)

__all__ = [
    "aes_basis",
    "aes_general",
    "normalization_b0_lower",
    "normalization_b0_upper",
    "normalization_b0_full",
    "supercoherent_pair",
]


def _ladder_series(
    f: FockSpace,
    rep: Su2Rep,
    coupling: complex,
    beta: complex,
    ladder: np.ndarray,
    c: np.ndarray,
) -> np.ndarray:
    """sum_n (-coupling)^n (a† + beta*)^n / n! (x) ladder^n applied to c.

    Terminates because the ladder is nilpotent on the multiplet.
    """
    shifted = creation(f) + np.conj(beta) * np.eye(f.dim)
    lt = ladder.T
    out = c.copy()
    term = c
    fock_pow = np.eye(f.dim, dtype=complex)
    spin_pow = np.eye(rep.dim, dtype=complex)
    for n in range(1, rep.dim):
        fock_pow = shifted @ fock_pow
        spin_pow = spin_pow @ lt
        coeff = (-coupling) ** n / factorial(n)
        term = coeff * (fock_pow @ c @ spin_pow)
        if not np.any(term):
            break
        out += term
    return out


def _theta_series(rep: Su2Rep, theta: complex, c: np.ndarray) -> np.ndarray:
    """sum_l theta^l / l! (x) J_plus^l applied on the spin side."""
    jp, _, _ = generators(rep)
    jpt = jp.T
    out = c.copy()
    spin_pow = np.eye(rep.dim, dtype=complex)
    for ell in range(1, rep.dim):
        spin_pow = spin_pow @ jpt
        term = (theta**ell / factorial(ell)) * (c @ spin_pow)
        if not np.any(term):
            break
        out += term
    return out


def _finite_sum_state(
    f: FockSpace, rep: Su2Rep, p: BetaParams, mi: int, tag: CaseTag
) -> np.ndarray:
    """Normalized b = 0 basis state labeled by the mi-th magnetic number."""
    jp, jm, _ = generators(rep)
    c = np.zeros((f.dim, rep.dim), dtype=complex)
    c[0, mi] = 1.0
    if tag is CaseTag.B_ZERO_LOWER:
        c = _ladder_series(f, rep, p.beta_plus, p.beta, jm, c)
    elif tag is CaseTag.B_ZERO_UPPER:
        c = _ladder_series(f, rep, p.beta_minus, p.beta, jp, c)
    else:
        theta = p.beta_3 / (2 * p.beta_plus)
        c = _ladder_series(f, rep, p.beta_plus, p.beta, jm, c)
        c = _theta_series(rep, theta, c)
    c = phase_fix_highest(c)
    if p.beta != 0:
        c = displacement(f, p.beta) @ c
    return normalize(c)


def aes_basis(f: FockSpace, rep: Su2Rep, p: BetaParams):
    """The 2j+1 independent eigenstates for eigenvalue p.beta.

    Returns (states, meta): states[i] is the normalized (dim_fock,
    dim_spin) array labeled by m_i, and meta records the case tag plus the
    b branch for the displaced families.
    """
    tag = classify(p)
    dim = rep.dim
    states = np.zeros((dim, f.dim, dim), dtype=complex)
    meta = {"case": tag, "eigenvalue": complex(p.beta)}

    if tag is CaseTag.ALL_ZERO:
        coh = coherent(f, p.beta)
        for i in range(dim):
            states[i, :, i] = coh
        meta["b"] = 0j
        return states, meta

    if tag in (CaseTag.B_NONZERO_NORMAL, CaseTag.B_NONZERO_DIAGONALIZABLE):
        t, tmeta = passing_matrix(rep, p)
        b = tmeta["b"]
        for i, m in enumerate(rep.m_values):
            coh = coherent(f, p.beta - m * b)
            states[i] = normalize(np.outer(coh, t[:, i]))
        meta.update(b=b, passing=tmeta)
        return states, meta

    for i in range(dim):
        states[i] = _finite_sum_state(f, rep, p, i, tag)
    meta["b"] = 0j
    return states, meta


def aes_general(f: FockSpace, rep: Su2Rep, p: BetaParams, coeffs) -> np.ndarray:
    """Normalized linear combination of the basis states."""
    coeffs = np.asarray(coeffs, dtype=complex)
    states, _ = aes_basis(f, rep, p)
    if coeffs.shape != (rep.dim,):
        raise ValueError("coeffs must supply one weight per basis state")
    return normalize(np.tensordot(coeffs, states, axes=(0, 0)))


def _poisson_bracket(n: int, beta_abs2: float) -> float:
    """sum_k C(n,k) |beta|^{2k} / k! = <beta| a^n a†^n |beta> / n!."""
    return float(sum(Fraction(comb(n, k)) * beta_abs2**k / factorial(k) for k in range(n + 1)))


def normalization_b0_lower(rep: Su2Rep, p: BetaParams, twom: int) -> float:
    """Closed-form squared norm of the beta_plus-only series for label m."""
    jpm = (rep.twoj + twom) // 2
    jmm = (rep.twoj - twom) // 2
    bp2 = abs(p.beta_plus) ** 2
    bb2 = abs(p.beta) ** 2
    total = 0.0
    for n in range(jpm + 1):
        ratio = Fraction(factorial(jmm + n), factorial(jpm - n))
        total += float(ratio) * bp2**n / factorial(n) * _poisson_bracket(n, bb2)
    return float(Fraction(factorial(jpm), factorial(jmm))) * total


def normalization_b0_upper(rep: Su2Rep, p: BetaParams, twom: int) -> float:
    """Closed-form squared norm of the beta_minus-only series for label m."""
    jpm = (rep.twoj + twom) // 2
    jmm = (rep.twoj - twom) // 2
    bm2 = abs(p.beta_minus) ** 2
    bb2 = abs(p.beta) ** 2
    total = 0.0
    for n in range(jmm + 1):
        ratio = Fraction(factorial(jpm + n), factorial(jmm - n))
        total += float(ratio) * bm2**n / factorial(n) * _poisson_bracket(n, bb2)
    return float(Fraction(factorial(jmm), factorial(jpm))) * total


def normalization_b0_full(rep: Su2Rep, p: BetaParams, twom: int) -> float:
    """Closed-form squared norm of the all-couplings b = 0 series.

    Triple sum over the two series orders (n, ntilde) and the ladder order
    l; the boson factor contributes the displaced-number moments, the spin
    factor the factorial ratios.  Terms whose paired ladder order
    l + ntilde - n would be negative vanish identically.
    """
    twoj = rep.twoj
    jpm = (twoj + twom) // 2
    theta = p.beta_3 / (2 * p.beta_plus)
    th2 = abs(theta) ** 2
    thc = np.conj(theta)
    bb = complex(p.beta)
    total = 0.0 + 0.0j
    for n in range(jpm + 1):
        for nt in range(jpm + 1):
            fr = Fraction(
                factorial((twoj + 2 * n - twom) // 2)
                * factorial((twoj + 2 * nt - twom) // 2),
                factorial(jpm - n) * factorial(jpm - nt),
            )
            series = (
                (-1) ** (nt - n)
                * float(fr)
                * np.conj(p.beta_plus) ** nt
                * p.beta_plus**n
                / (factorial(nt) * factorial(n))
            )
            lsum = 0.0 + 0.0j
            jnm = (twoj + 2 * n - twom) // 2
            for ell in range(jnm + 1):
                lt = ell + nt - n
                if lt < 0 or lt > (twoj + 2 * nt - twom) // 2:
                    continue
                lfr = Fraction(
                    factorial(jpm - n + ell), factorial(jnm - ell)
                )
                lsum += (
                    float(lfr)
                    * th2**ell
                    * thc ** (nt - n)
                    / (factorial(lt) * factorial(ell))
                )
            ksum = 0.0 + 0.0j
            for kk in range(min(nt, n) + 1):
                ksum += (
                    comb(nt, kk)
                    * comb(n, kk)
                    * factorial(kk)
                    * bb ** (nt - kk)
                    * np.conj(bb) ** (n - kk)
                )
            total += series * lsum * ksum
    total *= float(Fraction(factorial(jpm), factorial((twoj - twom) // 2)))
    if abs(total.imag) > 1e-10 * max(abs(total.real), 1.0):
        raise ArithmeticError("squared norm came out non-real")
    return float(total.real)


def supercoherent_pair(
    f: FockSpace,
    rep: Su2Rep,
    beta: complex,
    beta_plus: complex,
    c1,
    c2,
) -> VectorState:
    """Two-component solution for the non-diagonalizable eigenvalue matrix.

    Solves A psi = M psi with M = [[beta, -beta_plus], [0, beta]] (a Jordan
    block): the second component is an ordinary displaced spin stack, the
    first picks up a creation-operator correction proportional to the
    defect.  c1/c2 are the spin weights of the two components at the
    vacuum level.
    """
    c1 = np.asarray(c1, dtype=complex)
    c2 = np.asarray(c2, dtype=complex)
    if c1.shape != (rep.dim,) or c2.shape != (rep.dim,):
        raise ValueError("c1 and c2 must be spin weight vectors")
    e_up = expm(beta * creation(f))
    base1 = np.zeros((f.dim, rep.dim), dtype=complex)
    base2 = np.zeros((f.dim, rep.dim), dtype=complex)
    base1[0] = c1
    base2[0] = c2
    psi2 = e_up @ base2
    psi1 = e_up @ (base1 - beta_plus * creation(f) @ base2)
    amps = normalize(np.stack([psi1, psi2]))
    mt = np.array([[beta, -beta_plus], [0.0, beta]], dtype=complex)
    # The defining operator is the bare boson lowering operator; beta and
    # beta_plus live in the (Jordan) eigenvalue matrix, not in the couplings.
    return VectorState(
        amplitudes=amps,
        fock=f,
        rep=rep,
        beta=BetaParams(),
        mtilde=mt,
        family="supercoherent-pair",
        meta={"defective": True},
    )
