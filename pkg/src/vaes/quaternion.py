"""Quaternionic 2x2 eigenvalue matrices and their canonical vector states.

A real quaternion in polar form (r, theta, phi, psi) embeds as a 2x2
complex matrix with m m† = r² I and eigenvalues r e^{±i theta}.  The same
four parameters define couplings whose j = 1/2 eigenvalue matrix is exactly
that embedding, tying the K = 2 vector problem to the spin-1/2 one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .fock import FockSpace
from .linops import DefectReport, eig, principal_sqrt
from .states import VectorState
from .su2 import BetaParams, Su2Rep
from .vector_states import series_vcs

__all__ = [
    "QuaternionPolar",
    "quat_to_matrix",
    "beta_from_quat",
    "canonical_quaternionic_vcs",
    "k2_passing",
]


@dataclass(frozen=True)
class QuaternionPolar:
    """r > 0, theta in [0, pi], phi in [0, pi], psi in [0, 2 pi)."""

    r: float
    theta: float
    phi: float
    psi: float

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError("r must be positive")
        if not 0 <= self.theta <= math.pi:
            raise ValueError("theta must lie in [0, pi]")
        if not 0 <= self.phi <= math.pi:
            raise ValueError("phi must lie in [0, pi]")
        if not 0 <= self.psi < 2 * math.pi:
            raise ValueError("psi must lie in [0, 2 pi)")


def beta_from_quat(q: QuaternionPolar) -> BetaParams:
    """Couplings whose j = 1/2 eigenvalue matrix is the quaternion embedding.

    beta = r cos(theta) carries the real part; the imaginary direction
    splits into beta_3 = 2 i r sin(theta) cos(phi) along J_3 and the
    conjugate pair beta_± = -i r sin(theta) sin(phi) e^{±i psi}.  These
    satisfy the normality conditions for every (r, theta, phi, psi).
    """
    st = math.sin(q.theta)
    return BetaParams(
        beta=q.r * math.cos(q.theta),
        beta_plus=-1j * q.r * st * math.sin(q.phi) * cmath.exp(1j * q.psi),
        beta_minus=-1j * q.r * st * math.sin(q.phi) * cmath.exp(-1j * q.psi),
        beta_3=2j * q.r * st * math.cos(q.phi),
    )


def quat_to_matrix(q: QuaternionPolar) -> np.ndarray:
    """2x2 embedding [[a+ib, c+id], [-c+id, a-ib]] in polar parameters."""
    st = math.sin(q.theta)
    diag = q.r * math.cos(q.theta) - 1j * q.r * st * math.cos(q.phi)
    off = 1j * q.r * st * math.sin(q.phi)
    return np.array(
        [
            [diag, off * cmath.exp(1j * q.psi)],
            [off * cmath.exp(-1j * q.psi), np.conj(diag)],
        ],
        dtype=complex,
    )


def canonical_quaternionic_vcs(f: FockSpace, q: QuaternionPolar) -> VectorState:
    """K = 2, j = 1/2 solution of a Psi = M Psi with the quaternion matrix.

    Built through the matrix-power series; the raw squared norm is
    2 e^{r²} independent of the angles, since m m† = r² I.
    """
    rep = Su2Rep(1)
    state = series_vcs(f, rep, quat_to_matrix(q), m_list=[-0.5, 0.5])
    return VectorState(
        amplitudes=state.amplitudes,
        fock=f,
        rep=rep,
        beta=BetaParams(),
        mtilde=state.mtilde,
        family="quaternionic-canonical",
        meta={**state.meta, "quaternion": q},
    )


def k2_passing(mtilde: np.ndarray):
    """Closed-form 2x2 diagonalization P, P^{-1}, (lambda_+, lambda_-).

    Uses the discriminant root bt = sqrt(4 m12 m21 + (m11-m22)²) with
    lambda_± = (m11+m22)/2 ± bt/2 and the eigenvector matrix

        P = [[2 m12, m11-m22-bt], [m22-m11+bt, 2 m21]].

    P^{-1} comes from direct 2x2 inversion.  When P is singular, e.g. a
    triangular matrix where a column collapses to zero, the general
    eigensolver takes over; returns (p, p_inv, lambdas, used_fallback).
    """
    m = np.asarray(mtilde, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError("k2_passing expects a 2x2 matrix")
    m11, m12, m21, m22 = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    bt = principal_sqrt(4 * m12 * m21 + (m11 - m22) ** 2)
    lam = np.array(
        [(m11 + m22) / 2 + bt / 2, (m11 + m22) / 2 - bt / 2], dtype=complex
    )
    p = np.array(
        [[2 * m12, m11 - m22 - bt], [m22 - m11 + bt, 2 * m21]], dtype=complex
    )
    det = p[0, 0] * p[1, 1] - p[0, 1] * p[1, 0]
    scale = float(np.max(np.abs(p))) ** 2
    if scale > 0 and abs(det) > 1e-12 * scale:
        p_inv = np.array(
            [[p[1, 1], -p[0, 1]], [-p[1, 0], p[0, 0]]], dtype=complex
        ) / det
        return p, p_inv, lam, False
    d = eig(m)
    if isinstance(d, DefectReport):
        raise ValueError("matrix is defective; no passing matrix exists")
    return d.passing, d.passing_inverse, d.diagonal, True
