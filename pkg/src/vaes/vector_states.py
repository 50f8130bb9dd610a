"""Vector eigenstate solvers: K stacked components tied by a K x K
eigenvalue matrix.

The defining relation is A Psi = mtilde Psi componentwise, with A the
composite lowering operator (bare boson operator when all couplings are
zero).  Solvers differ in the route, not the problem:

* solve_annihilator: eigendecompose mtilde and attach one exponential
  boson ray per eigenvalue (zero couplings).
* series_vcs: the matrix-power series sum_n mtilde^n/sqrt(n!) |n> stack.
* solve_general: mix single-component eigenstates of the coupled operator
  through the passing matrix of mtilde (any diagonalizable mtilde).
* vcs_displacement_form: the compact displace-rotate-twist product built
  with one literal matrix exponential on the stacked space.
* bneq0_family: same product evaluated factor-by-factor, valid for any
  couplings with b != 0 including non-normal ones.
* intelligent_family: the b = 0 single-coupling family in product form.

Every solver returns a normalized VectorState; meta carries the raw
squared norm so closed-form norm constants can be checked against it.
"""

from __future__ import annotations

import math
from math import factorial

import numpy as np

from .aes import aes_basis, supercoherent_pair
from .fock import FockSpace, annihilator, coherent, creation, displacement
from .linops import (
    DefectReport,
    Diagonalization,
    eig,
    expm,
    is_normal,
    kron,
    matrix_function,
)
from .states import VectorState, normalize
from .su2 import BetaParams, Su2Rep, b_parameter, generators, passing_matrix

__all__ = [
    "solve_annihilator",
    "series_vcs",
    "norm_constant_series",
    "solve_general",
    "displacement_matched_constants",
    "vcs_displacement_form",
    "intelligent_family",
    "intelligent_polar_form",
    "bneq0_family",
    "energy_ladder",
]


def _m_indices(rep: Su2Rep, m_list, k: int) -> list[int]:
    """Resolve magnetic labels (values -j..j) to basis indices; default
    cycles through the multiplet."""
    if m_list is None:
        return [s % rep.dim for s in range(k)]
    if len(m_list) != k:
        raise ValueError("m_list must supply one label per component")
    out = []
    for m in m_list:
        idx = round(float(m) + rep.twoj / 2.0)
        if abs(idx - (float(m) + rep.twoj / 2.0)) > 1e-9 or not 0 <= idx < rep.dim:
            raise ValueError(f"m = {m} is not a magnetic number of this multiplet")
        out.append(int(idx))
    return out


def _constants_table(rep: Su2Rep, k: int, constants, mi: list[int]) -> np.ndarray:
    if constants is None:
        table = np.zeros((k, rep.dim), dtype=complex)
        for s in range(k):
            table[s, mi[s]] = 1.0
        return table
    table = np.asarray(constants, dtype=complex)
    if table.shape != (k, rep.dim):
        raise ValueError("constants must have shape (K, 2j+1)")
    return table


def _exp_ray(f: FockSpace, lam: complex) -> np.ndarray:
    """Unnormalized exp(lam a†)|0>: amplitudes lam^n / sqrt(n!)."""
    c = np.zeros(f.dim, dtype=complex)
    c[0] = 1.0
    for n in range(1, f.dim):
        c[n] = c[n - 1] * lam / math.sqrt(n)
    return c


def solve_annihilator(
    f: FockSpace,
    rep: Su2Rep,
    mtilde: np.ndarray,
    constants=None,
    m_list=None,
) -> VectorState:
    """Solve a Psi = mtilde Psi with zero spin couplings.

    Each eigenvalue of mtilde contributes an exponential boson ray
    exp(lambda a†)|0> against a spin weight row from ``constants``
    (default: component s starts in the single level m_list[s]).  A 2x2
    upper-triangular Jordan block is routed to supercoherent_pair; other
    non-diagonalizable matrices are rejected.
    """
    mtilde = np.asarray(mtilde, dtype=complex)
    k = mtilde.shape[0]
    mi = _m_indices(rep, m_list, k)
    table = _constants_table(rep, k, constants, mi)

    d = eig(mtilde)
    if isinstance(d, DefectReport):
        scale = max(1.0, float(np.max(np.abs(mtilde))))
        if (
            k == 2
            and abs(mtilde[1, 0]) <= 1e-12 * scale
            and abs(mtilde[0, 0] - mtilde[1, 1]) <= 1e-12 * scale
        ):
            return supercoherent_pair(
                f,
                rep,
                beta=complex(mtilde[0, 0]),
                beta_plus=-complex(mtilde[0, 1]),
                c1=table[0],
                c2=table[1],
            )
        raise ValueError(
            "eigenvalue matrix is not diagonalizable "
            f"(eigenvalue {d.eigenvalue:.6g}: algebraic {d.algebraic_multiplicity}, "
            f"geometric {d.geometric_multiplicity}); only the 2x2 "
            "upper-triangular defect has a supported solution"
        )

    rays = np.stack([_exp_ray(f, lam) for lam in d.diagonal])
    # amplitudes[u, n, m] = sum_s P[u,s] rays[s,n] table[s,m]
    amps = np.einsum("us,sn,sm->unm", d.passing, rays, table)
    raw_sq = float(np.sum(np.abs(amps) ** 2))
    return VectorState(
        amplitudes=normalize(amps),
        fock=f,
        rep=rep,
        beta=BetaParams(),
        mtilde=mtilde,
        family="annihilator-vector",
        meta={
            "norm_constant": raw_sq,
            "mtilde_normal": d.is_unitary,
            "m_indices": mi,
        },
    )


def series_vcs(
    f: FockSpace, rep: Su2Rep, mtilde: np.ndarray, m_list=None
) -> VectorState:
    """sum_n mtilde^n / sqrt(n!) applied to the vacuum stack.

    Independent of any eigendecomposition, which makes it the natural
    cross-check for solve_annihilator with matched integration constants.
    """
    mtilde = np.asarray(mtilde, dtype=complex)
    k = mtilde.shape[0]
    mi = _m_indices(rep, m_list, k)
    amps = np.zeros((k, f.dim, rep.dim), dtype=complex)
    power = np.eye(k, dtype=complex)
    for n in range(f.dim):
        if n > 0:
            power = power @ mtilde / math.sqrt(n)
        for s in range(k):
            amps[:, n, mi[s]] += power[:, s]
    raw_sq = float(np.sum(np.abs(amps) ** 2))
    return VectorState(
        amplitudes=normalize(amps),
        fock=f,
        rep=rep,
        beta=BetaParams(),
        mtilde=mtilde,
        family="series-vcs",
        meta={"norm_constant": raw_sq, "m_indices": mi},
    )


def norm_constant_series(mtilde: np.ndarray, ground: np.ndarray) -> float:
    """Squared norm <Psi(0)| exp(mtilde mtilde†) |Psi(0)> of the series
    state with starting stack ``ground`` (shape (K, N, dim), unnormalized).

    Only valid for normal mtilde: the factorial resummation needs the
    matrix powers to collapse onto powers of mtilde mtilde†.
    """
    mtilde = np.asarray(mtilde, dtype=complex)
    if not is_normal(mtilde):
        raise ValueError("norm_constant_series requires a normal eigenvalue matrix")
    e = expm(mtilde @ mtilde.conj().T)
    k = mtilde.shape[0]
    flat = ground.reshape(k, -1)
    gram = flat.conj() @ flat.T
    val = complex(np.sum(e * gram))
    return float(val.real)


def _branch_states_bneq0(
    f: FockSpace, rep: Su2Rep, p: BetaParams, lam: complex
):
    """Unnormalized single-component eigenstates for eigenvalue lam:
    coherent ray labeled lam - m b against the raw passing column."""
    t, meta = passing_matrix(rep, p)
    b = meta["b"]
    states = np.zeros((rep.dim, f.dim, rep.dim), dtype=complex)
    for i, m in enumerate(rep.m_values):
        states[i] = np.outer(coherent(f, lam - m * b), t[:, i])
    return states, b


def solve_general(
    f: FockSpace,
    rep: Su2Rep,
    p: BetaParams,
    mtilde: np.ndarray,
    m_list=None,
    constants=None,
) -> VectorState:
    """Solve A Psi = mtilde Psi for coupled operators.

    Component u is sum_s P[u,s] * (branch eigenstate of eigenvalue
    lambda_s), so any diagonalizable mtilde works.  ``constants`` may be a
    (K, 2j+1) table of per-branch spin weights or the string
    "displacement" for the table that reproduces vcs_displacement_form.
    """
    mtilde = np.asarray(mtilde, dtype=complex)
    k = mtilde.shape[0]
    mi = _m_indices(rep, m_list, k)
    d = eig(mtilde)
    if isinstance(d, DefectReport):
        raise ValueError("solve_general requires a diagonalizable eigenvalue matrix")

    b_used = None
    if p.scale() > 0 and abs(p.discriminant()) > 1e-12 * p.scale() ** 2:
        branch_builder = "bneq0"
    else:
        branch_builder = "aes"

    if isinstance(constants, str):
        if constants != "displacement":
            raise ValueError(f"unknown constants rule {constants!r}")
        if branch_builder != "bneq0":
            raise ValueError("displacement constants need b != 0")
        table = displacement_matched_constants(rep, p, d, mi)
    else:
        table = _constants_table(rep, k, constants, mi)

    amps = np.zeros((k, f.dim, rep.dim), dtype=complex)
    for s, lam in enumerate(d.diagonal):
        pbranch = BetaParams(
            beta=lam,
            beta_plus=p.beta_plus,
            beta_minus=p.beta_minus,
            beta_3=p.beta_3,
        )
        if branch_builder == "bneq0":
            basis, b_used = _branch_states_bneq0(f, rep, pbranch, lam)
        else:
            basis, _ = aes_basis(f, rep, pbranch)
        branch = np.tensordot(table[s], basis, axes=(0, 0))
        amps += np.einsum("u,nm->unm", d.passing[:, s], branch)
    raw_sq = float(np.sum(np.abs(amps) ** 2))
    return VectorState(
        amplitudes=normalize(amps),
        fock=f,
        rep=rep,
        beta=p,
        mtilde=mtilde,
        family="general-vector",
        meta={
            "norm_constant": raw_sq,
            "m_indices": mi,
            "b": b_used,
            "mtilde_normal": d.is_unitary,
        },
    )


def displacement_matched_constants(
    rep: Su2Rep, p: BetaParams, d: Diagonalization, mi: list[int]
) -> np.ndarray:
    """Integration constants making solve_general equal the compact
    displacement product: the inverse passing matrix spread over the
    component spin levels.

    The twist factor exp(m (lambda b* - conj(lambda) b)/2) cancels exactly
    against the phase the displacement produces when shifting the coherent
    label by lambda, so no weight survives.
    """
    k = len(mi)
    pinv = d.passing_inverse
    table = np.zeros((k, rep.dim), dtype=complex)
    for s in range(k):
        for r in range(k):
            table[s, mi[r]] += pinv[s, r]
    return table


def _displace_by_mtilde(
    f: FockSpace, d: Diagonalization, amps: np.ndarray
) -> np.ndarray:
    """Apply exp(mtilde a† - mtilde† a) componentwise via the eigenbasis."""
    mixed = np.einsum("su,unm->snm", d.passing_inverse, amps)
    for s, lam in enumerate(d.diagonal):
        mixed[s] = displacement(f, lam) @ mixed[s]
    return np.einsum("us,snm->unm", d.passing, mixed)


def vcs_displacement_form(
    f: FockSpace,
    rep: Su2Rep,
    p: BetaParams,
    mtilde: np.ndarray,
    m_list=None,
) -> VectorState:
    """Compact product solution, evaluated with one stacked expm.

    Psi = D(mtilde) T exp((mtilde b* - mtilde† b)/2 (x) J_3) applied to the
    stack of coherent states labeled -m_s b in spin level m_s.  Requires a
    normal mtilde and b != 0.  The stacked displacement exponential is
    evaluated literally here; bneq0_family computes the same product
    factorwise and serves as its cross-check.
    """
    mtilde = np.asarray(mtilde, dtype=complex)
    k = mtilde.shape[0]
    if not is_normal(mtilde):
        raise ValueError("vcs_displacement_form requires a normal eigenvalue matrix")
    mi = _m_indices(rep, m_list, k)
    t, tmeta = passing_matrix(rep, p)
    b = tmeta["b"]

    ik = np.eye(k)
    idn = np.eye(f.dim)
    ids = np.eye(rep.dim)
    a = annihilator(f)
    adag = creation(f)
    _, _, j3 = generators(rep)

    big_d = expm(kron(mtilde, kron(adag, ids)) - kron(mtilde.conj().T, kron(a, ids)))
    g = (mtilde * np.conj(b) - mtilde.conj().T * b) / 2.0
    twist = expm(kron(g, kron(idn, j3)))
    tlift = kron(ik, kron(idn, t))

    ground = np.zeros((k, f.dim, rep.dim), dtype=complex)
    for s in range(k):
        m = rep.m_values[mi[s]]
        ground[s, :, mi[s]] = coherent(f, -m * b)

    vec = (big_d @ (tlift @ (twist @ ground.reshape(-1))))
    amps = vec.reshape(k, f.dim, rep.dim)
    raw_sq = float(np.sum(np.abs(amps) ** 2))
    return VectorState(
        amplitudes=normalize(amps),
        fock=f,
        rep=rep,
        beta=p,
        mtilde=mtilde,
        family="displacement-vcs",
        meta={"norm_constant": raw_sq, "m_indices": mi, "b": b, "passing": tmeta},
    )


def bneq0_family(
    f: FockSpace,
    rep: Su2Rep,
    p: BetaParams,
    mtilde: np.ndarray,
    m_list=None,
) -> VectorState:
    """The same displace-rotate-twist product as vcs_displacement_form,
    evaluated factor by factor.

    Works for every coupling family with b != 0, including the non-normal
    ones whose rotation factor is not unitary.  mtilde must be normal.
    """
    mtilde = np.asarray(mtilde, dtype=complex)
    k = mtilde.shape[0]
    if not is_normal(mtilde):
        raise ValueError("bneq0_family requires a normal eigenvalue matrix")
    mi = _m_indices(rep, m_list, k)
    t, tmeta = passing_matrix(rep, p)
    b = tmeta["b"]

    amps = np.zeros((k, f.dim, rep.dim), dtype=complex)
    for s in range(k):
        m = rep.m_values[mi[s]]
        amps[s, :, mi[s]] = coherent(f, -m * b)

    # Twist: exp(G (x) J_3) acts on (component, spin) indices only.
    g = (mtilde * np.conj(b) - mtilde.conj().T * b) / 2.0
    for i, m in enumerate(rep.m_values):
        amps[:, :, i] = np.einsum("uv,vn->un", expm(m * g), amps[:, :, i])

    amps = amps @ t.T

    d = eig(mtilde)
    amps = _displace_by_mtilde(f, d, amps)
    raw_sq = float(np.sum(np.abs(amps) ** 2))
    return VectorState(
        amplitudes=normalize(amps),
        fock=f,
        rep=rep,
        beta=p,
        mtilde=mtilde,
        family="bneq0-master",
        meta={"norm_constant": raw_sq, "m_indices": mi, "b": b, "passing": tmeta},
    )


def _require_single_coupling(p: BetaParams):
    zp = p.beta_plus == 0
    zm = p.beta_minus == 0
    if p.beta_3 != 0 or zp == zm:
        raise ValueError(
            "intelligent_family needs exactly one of beta_plus/beta_minus "
            "nonzero and beta_3 = 0"
        )
    return "lower" if not zp else "upper"


def intelligent_family(
    f: FockSpace,
    rep: Su2Rep,
    p: BetaParams,
    mtilde: np.ndarray,
    m_list=None,
) -> VectorState:
    """b = 0 single-coupling vector states in product form.

    Psi = D(mtilde) exp(-(a† + mtilde†) beta_plus J_minus) |vacuum stack>
    (mirror version with J_plus for a beta_minus coupling).  The ladder
    series terminates, so only the displacement is exponentiated.  mtilde
    must be normal for the product to solve the eigenvalue relation.
    """
    side = _require_single_coupling(p)
    mtilde = np.asarray(mtilde, dtype=complex)
    k = mtilde.shape[0]
    if not is_normal(mtilde):
        raise ValueError("intelligent_family requires a normal eigenvalue matrix")
    mi = _m_indices(rep, m_list, k)
    jp, jm, _ = generators(rep)
    ladder = jm if side == "lower" else jp
    coupling = p.beta_plus if side == "lower" else p.beta_minus

    amps = np.zeros((k, f.dim, rep.dim), dtype=complex)
    for s in range(k):
        amps[s, 0, mi[s]] = 1.0

    # exp(-coupling (a† (x) ladder)) per component and
    # exp(-coupling (mtilde† (x) ladder)) across components; the two
    # factors commute and both series terminate with the ladder.
    lt = ladder.T
    adag = creation(f)
    mh = mtilde.conj().T
    term = amps
    for n in range(1, rep.dim):
        new = np.empty_like(term)
        for u in range(k):
            new[u] = adag @ term[u] @ lt
        term = (-coupling / n) * new
        amps = amps + term
        if not np.any(term):
            break
    kpow = np.eye(k, dtype=complex)
    spin_pow = np.eye(rep.dim, dtype=complex)
    out = amps.copy()
    for n in range(1, rep.dim):
        kpow = kpow @ mh
        spin_pow = spin_pow @ lt
        coeff = (-coupling) ** n / factorial(n)
        contrib = coeff * np.einsum("uv,vnm->unm", kpow, amps @ spin_pow)
        out += contrib
        if not np.any(contrib):
            break
    amps = out

    d = eig(mtilde)
    amps = _displace_by_mtilde(f, d, amps)
    raw_sq = float(np.sum(np.abs(amps) ** 2))
    return VectorState(
        amplitudes=normalize(amps),
        fock=f,
        rep=rep,
        beta=p,
        mtilde=mtilde,
        family="intelligent-vector",
        meta={"norm_constant": raw_sq, "m_indices": mi, "side": side},
    )


def intelligent_polar_form(
    f: FockSpace, rep: Su2Rep, p: BetaParams, mtilde: np.ndarray
) -> VectorState:
    """Closed rotation form of the single-coupling family pinned to the
    ladder-extremal stack (all components start at m = +j for a beta_plus
    coupling, m = -j for the mirror).

    Uses arctan(|c| sqrt(mtilde mtilde†)) / (|c| sqrt(mtilde mtilde†))
    as a matrix weight; differs from intelligent_family's state by a
    positive component mix unless mtilde mtilde† is a multiple of the
    identity, but solves the same eigenvalue relation.
    """
    side = _require_single_coupling(p)
    mtilde = np.asarray(mtilde, dtype=complex)
    k = mtilde.shape[0]
    if not is_normal(mtilde):
        raise ValueError("intelligent_polar_form requires a normal eigenvalue matrix")
    jp, jm, _ = generators(rep)
    coupling = p.beta_plus if side == "lower" else p.beta_minus
    cmag = abs(coupling)

    mi = [rep.dim - 1 if side == "lower" else 0] * k
    amps = np.zeros((k, f.dim, rep.dim), dtype=complex)
    for s in range(k):
        amps[s, 0, mi[s]] = 1.0

    def weight(x):
        # arctan(|c| sqrt(x)) / (|c| sqrt(x)), safe at x = 0
        r = np.sqrt(np.maximum(x.real, 0.0))
        out = np.ones_like(r)
        nz = r > 0
        out[nz] = np.arctan(cmag * r[nz]) / (cmag * r[nz])
        return out.astype(complex)

    wmat = matrix_function(mtilde @ mtilde.conj().T, weight)
    c_up = wmat @ mtilde * np.conj(coupling)
    c_dn = wmat @ mtilde.conj().T * coupling
    if side == "lower":
        gen = kron(c_up, jp) - kron(c_dn, jm)
    else:
        gen = kron(c_up, jm) - kron(c_dn, jp)
    rot = expm(gen)
    # rot acts on (component, spin); amplitudes currently occupy the
    # vacuum level only, so apply it there and keep the sparse structure.
    level0 = amps[:, 0, :].reshape(-1)
    amps[:, 0, :] = (rot @ level0).reshape(k, rep.dim)

    lt = (jm if side == "lower" else jp).T
    adag = creation(f)
    term = amps
    for n in range(1, rep.dim):
        new = np.empty_like(term)
        for u in range(k):
            new[u] = adag @ term[u] @ lt
        term = (-coupling / n) * new
        amps = amps + term
        if not np.any(term):
            break

    d = eig(mtilde)
    amps = _displace_by_mtilde(f, d, amps)
    raw_sq = float(np.sum(np.abs(amps) ** 2))
    return VectorState(
        amplitudes=normalize(amps),
        fock=f,
        rep=rep,
        beta=p,
        mtilde=mtilde,
        family="intelligent-polar",
        meta={"norm_constant": raw_sq, "m_indices": mi, "side": side},
    )


def energy_ladder(
    f: FockSpace, rep: Su2Rep, p: BetaParams, ground: VectorState, nmax: int
):
    """Excited tower (A†)^n/sqrt(n!) |ground> with Rayleigh quotients.

    Returns (states, rayleigh): states[n] is the normalized n-th rung,
    rayleigh[n] = <n| A† A |n>.  For canonical families the quotient is the
    rung number; deviations measure truncation plus non-canonical terms.
    """
    from .algebra import build_A

    a_op = build_A(f, rep, p)
    adag_op = a_op.conj().T
    num_op = adag_op @ a_op
    k = ground.k_components

    states = np.zeros((nmax + 1, k, f.dim, rep.dim), dtype=complex)
    rayleigh = np.zeros(nmax + 1)
    cur = normalize(ground.amplitudes.copy())
    for n in range(nmax + 1):
        if n > 0:
            nxt = np.empty_like(cur)
            for u in range(k):
                nxt[u] = (adag_op @ cur[u].reshape(-1)).reshape(f.dim, rep.dim)
            cur = normalize(nxt / math.sqrt(n))
        states[n] = cur
        val = 0.0
        for u in range(k):
            flat = cur[u].reshape(-1)
            val += np.vdot(flat, num_op @ flat).real
        rayleigh[n] = val
    return states, rayleigh
