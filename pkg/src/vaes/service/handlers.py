"""Pure request handlers, shared by the HTTP app and the CLI.

Error contract: pydantic validation failures and unknown names are the
caller's problem (config errors); ComputationError wraps mathematical
failures such as non-diagonalizable eigenvalue matrices, so transports can
distinguish the two.
"""

from __future__ import annotations

import numpy as np

from ..aes import aes_basis, aes_general
from ..algebra import build_A, commutator_report
from ..fock import FockSpace
from ..linops import is_normal
from ..presets import build_preset, catalog
from ..serialize import doc_to_state, state_to_doc
from ..states import VectorState
from ..su2 import BetaParams, Su2Rep, b_parameter, classify, family_is_normal
from ..suite import run_suite
from ..vector_states import (
    bneq0_family,
    intelligent_family,
    intelligent_polar_form,
    series_vcs,
    solve_annihilator,
    solve_general,
    vcs_displacement_form,
)
from ..verify import eigen_residual
from .schemas import (
    CatalogResponse,
    CheckRow,
    ClassifyRequest,
    ClassifyResponse,
    CouplingsModel,
    ResidualModel,
    SolveRequest,
    SolveResponse,
    VerifyRequest,
    VerifyResponse,
)

__all__ = [
    "ComputationError",
    "handle_classify",
    "handle_solve",
    "handle_verify",
    "handle_catalog",
]


class ComputationError(Exception):
    """The configuration was well-formed but has no computable solution."""


def _cx(pair) -> complex:
    return complex(float(pair[0]), float(pair[1]))


def _pair(z: complex) -> tuple:
    z = complex(z)
    return (z.real, z.imag)


def _beta(c: CouplingsModel) -> BetaParams:
    return BetaParams(
        beta=_cx(c.beta),
        beta_plus=_cx(c.beta_plus),
        beta_minus=_cx(c.beta_minus),
        beta_3=_cx(c.beta_3),
    )


def handle_classify(req: ClassifyRequest) -> ClassifyResponse:
    p = _beta(req.couplings)
    tag = classify(p, tol=req.tol)
    rpt = commutator_report(p, tol=req.tol)
    return ClassifyResponse(
        case=tag.value,
        scenario=rpt.scenario.value,
        b=_pair(b_parameter(p)),
        family_normal=family_is_normal(p),
        x=rpt.x,
        rho=rpt.rho,
        nu=rpt.nu,
        c_plus=_pair(rpt.c_plus),
    )


def _auto_family(p: BetaParams, mt: np.ndarray) -> str:
    if p.scale() == 0:
        return "annihilator"
    s2 = p.scale() ** 2
    if abs(p.discriminant()) > 1e-12 * s2:
        return "bneq0" if is_normal(mt) else "general"
    single = (p.beta_3 == 0) and ((p.beta_plus == 0) != (p.beta_minus == 0))
    if single and is_normal(mt):
        return "intelligent"
    return "general"


def _scalar_state(req: SolveRequest, f: FockSpace, rep: Su2Rep, p: BetaParams) -> VectorState:
    states, meta = aes_basis(f, rep, p)
    case = meta["case"].value
    if req.coeffs is not None:
        combined = aes_general(f, rep, p, [_cx(c) for c in req.coeffs])
        return VectorState(
            amplitudes=combined[None, :, :],
            fock=f,
            rep=rep,
            beta=p,
            mtilde=np.array([[p.beta]]),
            family="scalar-combination",
            meta={"case": case},
        )
    return VectorState(
        amplitudes=states,
        fock=f,
        rep=rep,
        beta=p,
        mtilde=p.beta * np.eye(rep.dim),
        family="scalar-basis",
        meta={"case": case, "b": meta["b"]},
    )


def _build_state(req: SolveRequest) -> VectorState:
    if req.preset is not None:
        return build_preset(req.preset, FockSpace(req.fock.dim, req.fock.guard))
    f = FockSpace(req.fock.dim, req.fock.guard)
    rep = Su2Rep(req.twoj)
    p = _beta(req.couplings)
    if req.mtilde is None:
        return _scalar_state(req, f, rep, p)

    mt = np.array([[_cx(v) for v in row] for row in req.mtilde])
    constants = req.constants
    if isinstance(constants, list):
        constants = np.array([[_cx(v) for v in row] for row in constants])
    family = req.family if req.family != "auto" else _auto_family(p, mt)

    if family == "annihilator":
        return solve_annihilator(f, rep, mt, constants=constants, m_list=req.m_list)
    if family == "series":
        return series_vcs(f, rep, mt, m_list=req.m_list)
    if family == "general":
        return solve_general(f, rep, p, mt, m_list=req.m_list, constants=constants)
    if family == "displacement":
        return vcs_displacement_form(f, rep, p, mt, m_list=req.m_list)
    if family == "bneq0":
        return bneq0_family(f, rep, p, mt, m_list=req.m_list)
    if family == "intelligent":
        return intelligent_family(f, rep, p, mt, m_list=req.m_list)
    return intelligent_polar_form(f, rep, p, mt)


def _residual(state: VectorState, rtol: float = 1e-8, tail_tol: float = 1e-10) -> ResidualModel:
    op = build_A(state.fock, state.rep, state.beta)
    rpt = eigen_residual(op, state.mtilde, state, rtol=rtol, tail_tol=tail_tol)
    return ResidualModel(
        relative_residual=rpt.relative_residual,
        tail_mass=rpt.tail_mass,
        guarded_dim=rpt.guarded_dim,
        passed=rpt.passed,
    )


def handle_solve(req: SolveRequest) -> SolveResponse:
    try:
        state = _build_state(req)
    except (ValueError, ArithmeticError) as exc:
        raise ComputationError(str(exc)) from exc
    return SolveResponse(
        document=state_to_doc(state),
        residual=_residual(state),
        family=state.family,
        k=state.k_components,
    )


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    if req.document is not None:
        state = doc_to_state(req.document)
        res = _residual(state, rtol=req.tol)
        line = (
            f"{'PASS' if res.passed else 'FAIL'} state-document: residual "
            f"{res.relative_residual:.2e} (tol {req.tol:g}), tail "
            f"{res.tail_mass:.2e}"
        )
        return VerifyResponse(
            passed=res.passed,
            results=[CheckRow(name="state-document", passed=res.passed, detail=line)],
            lines=[line],
        )
    report = run_suite(level=req.suite, seed=req.seed)
    rows = [
        CheckRow(name=r.name, passed=r.passed, detail=r.detail)
        for r in report.results
    ]
    return VerifyResponse(passed=report.passed, results=rows, lines=report.lines())


def handle_catalog() -> CatalogResponse:
    return CatalogResponse(presets=catalog())
