"""Named ready-to-run configurations.

Each preset builds a complete vector state on a given Fock space; the
catalog rows double as the CLI's discovery output.  Keys are stable
identifiers, safe to store in config files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .aes import supercoherent_pair
from .fock import FockSpace
from .quaternion import QuaternionPolar, canonical_quaternionic_vcs, quat_to_matrix
from .states import VectorState
from .su2 import BetaParams, Su2Rep
from .vector_states import (
    bneq0_family,
    intelligent_family,
    solve_annihilator,
    vcs_displacement_form,
)

__all__ = ["Preset", "PRESETS", "catalog", "build_preset"]


@dataclass(frozen=True)
class Preset:
    key: str
    description: str
    twoj: int
    k: int
    family: str
    build: Callable[[FockSpace], VectorState]
    aliases: tuple = ()


def _expression_two(f: FockSpace) -> VectorState:
    mt = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    return solve_annihilator(f, Su2Rep(1), mt)


def _vcs_half(f: FockSpace) -> VectorState:
    # couplings with equal ladder magnitudes and aligned phases, so the
    # commutator stays canonical; eigenvalue matrix from a unit-quaternion
    # scaling (its square against its adjoint is a multiple of 1).
    r, delta, r3 = 0.6, 0.4, 0.8
    p = BetaParams(
        beta_plus=r * np.exp(1j * delta / 2),
        beta_minus=r * np.exp(-1j * delta / 2),
        beta_3=r3,
    )
    mt = quat_to_matrix(QuaternionPolar(r=0.5, theta=0.9, phi=0.7, psi=0.3))
    return vcs_displacement_form(f, Su2Rep(1), p, mt)


def _standard_jj(f: FockSpace) -> VectorState:
    # all components pinned to the lowest magnetic level, which the
    # lowering coupling annihilates: the state is a pure matrix
    # displacement of the vacuum stack.
    p = BetaParams(beta_plus=0.8)
    mt = 0.7 * np.array(
        [[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex
    )
    return intelligent_family(f, Su2Rep(2), p, mt, m_list=[-1.0, -1.0, -1.0])


def _master_non_unitary(f: FockSpace) -> VectorState:
    # one-sided raising coupling with unequal ladder magnitudes: the spin
    # rotation factor is invertible but not unitary.
    p = BetaParams(beta_minus=0.4 * np.exp(0.3j), beta_3=0.9)
    mt = np.array([[0.3, 0.2], [-0.2, 0.3]], dtype=complex)
    return bneq0_family(f, Su2Rep(2), p, mt)


def _quaternionic_half(f: FockSpace) -> VectorState:
    q = QuaternionPolar(r=1.0, theta=math.pi / 2, phi=math.pi / 3, psi=0.0)
    return canonical_quaternionic_vcs(f, q)


def _supercoherent(f: FockSpace) -> VectorState:
    return supercoherent_pair(
        f,
        Su2Rep(1),
        beta=0.5,
        beta_plus=1.0,
        c1=[1.0, 0.0],
        c2=[0.0, 1.0],
    )


PRESETS: tuple = (
    Preset(
        key="VCS-expression-two",
        description="two components swapped by the eigenvalue matrix, "
        "spin 1/2, no spin coupling",
        twoj=1,
        k=2,
        family="annihilator-vector",
        build=_expression_two,
    ),
    Preset(
        key="VCS-j=1/2",
        description="spin-1/2 canonical coupling family with a "
        "quaternion-scaled eigenvalue matrix, displacement product form",
        twoj=1,
        k=2,
        family="displacement-vcs",
        build=_vcs_half,
    ),
    Preset(
        key="standard-VCS+j-j",
        description="three components at the lowest magnetic level of a "
        "spin-1 multiplet with a lowering coupling",
        twoj=2,
        k=3,
        family="intelligent-vector",
        build=_standard_jj,
        aliases=("standard-HW",),
    ),
    Preset(
        key="master-vector-states-non-unitary",
        description="spin-1 raising-coupled family whose spin rotation "
        "factor is non-unitary, factorwise product form",
        twoj=2,
        k=2,
        family="bneq0-master",
        build=_master_non_unitary,
    ),
    Preset(
        key="quaternionic-vector-ch-j=1/2",
        description="quaternion eigenvalue matrix at unit radius, "
        "matrix-power series route",
        twoj=1,
        k=2,
        family="quaternionic-canonical",
        build=_quaternionic_half,
    ),
    Preset(
        key="supercoherent-pair",
        description="two components tied by a non-diagonalizable "
        "eigenvalue matrix (single defect)",
        twoj=1,
        k=2,
        family="supercoherent-pair",
        build=_supercoherent,
    ),
)

_BY_KEY = {}
for _p in PRESETS:
    _BY_KEY[_p.key] = _p
    for _a in _p.aliases:
        _BY_KEY[_a] = _p


def catalog() -> list:
    """Serializable rows describing every preset (aliases included)."""
    rows = []
    for p in PRESETS:
        rows.append(
            {
                "key": p.key,
                "aliases": list(p.aliases),
                "description": p.description,
                "twoj": p.twoj,
                "k": p.k,
                "family": p.family,
            }
        )
    return rows


def build_preset(key: str, f: FockSpace | None = None) -> VectorState:
    if key not in _BY_KEY:
        known = ", ".join(sorted(_BY_KEY))
        raise KeyError(f"unknown preset {key!r}; known: {known}")
    return _BY_KEY[key].build(f or FockSpace())
