"""Residual, uncertainty, and self-calibration checks.

All residuals are judged on the guarded subspace (Fock levels below
dim - guard) since the truncated lowering operator is wrong at the top of
the ladder by construction.  States are assumed normalized; relative
residuals divide by the guarded state norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .fock import FockSpace, annihilator, coherent
from .states import VectorState
from .su2 import Su2Rep, generators
from .linops import kron

__all__ = [
    "ResidualReport",
    "SrReport",
    "Su2RelationsReport",
    "eigen_residual",
    "sr_check",
    "su2_relations_check",
    "calibration",
]


@dataclass(frozen=True)
class ResidualReport:
    """How well a stack solves op psi = mtilde psi on the guarded subspace."""

    relative_residual: float
    tail_mass: float
    guarded_dim: int
    per_component: tuple
    passed: bool
    context: str = ""


def eigen_residual(
    op: np.ndarray,
    mtilde: np.ndarray,
    state: VectorState,
    rtol: float = 1e-8,
    tail_tol: float = 1e-10,
    context: str = "",
) -> ResidualReport:
    """Guarded relative residual of A psi_u - sum_v mtilde[u,v] psi_v.

    ``op`` acts on one component (flattened boson x spin); mtilde couples
    components.  per_component holds each row's guarded residual relative
    to the full guarded norm.
    """
    mtilde = np.asarray(mtilde, dtype=complex)
    amps = state.amplitudes
    k, ndim, sdim = amps.shape
    f = state.fock
    checked = f.checked_dim

    applied = np.empty_like(amps)
    for u in range(k):
        applied[u] = (op @ amps[u].reshape(-1)).reshape(ndim, sdim)
    coupled = np.einsum("uv,vns->uns", mtilde, amps)
    resid = (applied - coupled)[:, :checked, :]

    ref = float(np.linalg.norm(amps[:, :checked, :]))
    if ref == 0:
        raise ValueError("state has no weight below the guard band")
    per = tuple(float(np.linalg.norm(resid[u])) / ref for u in range(k))
    rel = float(np.linalg.norm(resid)) / ref

    total = float(np.sum(np.abs(amps) ** 2))
    tail = float(np.sum(np.abs(amps[:, checked:, :]) ** 2)) / total
    return ResidualReport(
        relative_residual=rel,
        tail_mass=tail,
        guarded_dim=checked * sdim,
        per_component=per,
        passed=rel <= rtol and tail <= tail_tol,
        context=context,
    )


@dataclass(frozen=True)
class SrReport:
    """Two-observable uncertainty product versus its lower bound."""

    lhs: float
    rhs: float
    gap: float
    commutator_expect: float
    covariance: float
    saturated: bool


def sr_check(state: VectorState, op: np.ndarray, gap_tol: float = 1e-6) -> SrReport:
    """Uncertainty product of the quadratures of ``op`` on a stack.

    X = (op + op†)/sqrt(2), P = (op - op†)/(i sqrt(2)).  Expectations sum
    over components with full-stack normalization.  The bound is
    (<C>² + F²)/4 with i C = [X, P] and F the symmetrized covariance;
    eigenstates of ``op`` (with scalar eigenvalue matrix) saturate it.
    """
    amps = state.amplitudes
    k = amps.shape[0]
    x = (op + op.conj().T) / math.sqrt(2)
    p = (op - op.conj().T) / (1j * math.sqrt(2))

    def expect(mat):
        val = 0.0 + 0.0j
        for u in range(k):
            flat = amps[u].reshape(-1)
            val += np.vdot(flat, mat @ flat)
        return val

    nrm = float(sum(np.vdot(amps[u], amps[u]).real for u in range(k)))
    ex = expect(x).real / nrm
    ep = expect(p).real / nrm
    ex2 = expect(x @ x).real / nrm
    ep2 = expect(p @ p).real / nrm
    xp = x @ p
    px = p @ x
    c = expect(-1j * (xp - px)).real / nrm
    fcov = expect(xp + px).real / nrm - 2 * ex * ep

    var_x = ex2 - ex * ex
    var_p = ep2 - ep * ep
    lhs = var_x * var_p
    rhs = 0.25 * (c * c + fcov * fcov)
    gap = abs(lhs - rhs) / max(abs(rhs), 1e-300)
    return SrReport(
        lhs=lhs,
        rhs=rhs,
        gap=gap,
        commutator_expect=c,
        covariance=fcov,
        saturated=gap <= gap_tol,
    )


@dataclass(frozen=True)
class Su2RelationsReport:
    comm_pm: float
    comm_3p: float
    comm_3m: float
    casimir: float
    exact_integer: bool
    passed: bool


def su2_relations_check(rep: Su2Rep, tol: float = 1e-12) -> Su2RelationsReport:
    """Ladder relations and the Casimir, in floats and in exact integers.

    The float matrices hold the relations to rounding (entries are square
    roots of integers); the squared ladder coefficients obey the same
    identities exactly over the integers, which is also verified.
    """
    jp, jm, j3 = generators(rep)
    dim = rep.dim
    twoj = rep.twoj
    jj = twoj * (twoj + 2) / 4.0

    def rel(mat, target):
        denom = max(float(np.linalg.norm(target, "fro")), 1.0)
        return float(np.linalg.norm(mat - target, "fro")) / denom

    c_pm = rel(jp @ jm - jm @ jp, 2 * j3)
    c_3p = rel(j3 @ jp - jp @ j3, jp)
    c_3m = rel(j3 @ jm - jm @ j3, -jm)
    cas = rel(jp @ jm + j3 @ j3 - j3, jj * np.eye(dim))

    exact = True
    for i in range(dim):
        c_prev = i * (twoj - i + 1)  # squared coefficient entering level i
        c_here = (twoj - i) * (i + 1)
        if c_prev - c_here != 2 * i - twoj:
            exact = False
        lhs = Fraction(4 * c_prev + (2 * i - twoj) * (2 * i - twoj - 2), 4)
        if lhs != Fraction(twoj * (twoj + 2), 4):
            exact = False

    ok = max(c_pm, c_3p, c_3m, cas) <= tol and exact
    return Su2RelationsReport(
        comm_pm=c_pm,
        comm_3p=c_3p,
        comm_3m=c_3m,
        casimir=cas,
        exact_integer=exact,
        passed=ok,
    )


def calibration(f: FockSpace, rep: Su2Rep) -> dict:
    """Check that eigen_residual reports known perturbations faithfully.

    A coherent (x) spin-level state solves the bare problem; adding an
    orthogonal unit vector scaled by eps must move the reported residual
    to eps within a factor of 3, for eps over four decades.
    """
    from .su2 import BetaParams
    from .states import normalize

    beta = 0.7 + 0.3j
    op = kron(annihilator(f), np.eye(rep.dim))
    base = np.zeros((1, f.dim, rep.dim), dtype=complex)
    base[0, :, 0] = coherent(f, beta)

    direction = np.zeros_like(base)
    direction[0, 1, min(1, rep.dim - 1)] = 1.0
    overlap = np.vdot(base, direction)
    direction = normalize(direction - overlap * base)

    results = {}
    ok = True
    for eps in (1e-2, 1e-4, 1e-6):
        amps = normalize(base + eps * direction)
        state = VectorState(
            amplitudes=amps,
            fock=f,
            rep=rep,
            beta=BetaParams(beta=beta),
            mtilde=np.array([[beta]]),
            family="calibration",
        )
        report = eigen_residual(op, state.mtilde, state, rtol=np.inf, tail_tol=np.inf)
        results[eps] = report.relative_residual
        if not (eps / 3 <= report.relative_residual <= 3 * eps):
            ok = False
    results["passed"] = ok
    return results
