"""State containers and amplitude helpers.

A component state on the composite space is an (dim_fock, dim_spin)
complex array C with C[n, i] the amplitude of |n> (x) |j, m_i>; its
row-major flattening matches the kron index law (boson slow, spin fast).
A vector state stacks K components along the leading axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fock import FockSpace
from .su2 import BetaParams, Su2Rep

__all__ = [
    "VectorState",
    "flatten",
    "norm",
    "inner",
    "normalize",
    "apply_op",
    "tail_mass",
    "phase_fix_highest",
    "phase_fix_largest",
]


def flatten(c: np.ndarray) -> np.ndarray:
    """(..., N, dim) -> (..., N*dim) in kron order."""
    return c.reshape(*c.shape[:-2], -1)


def norm(c: np.ndarray) -> float:
    return float(np.linalg.norm(c))


def inner(c1: np.ndarray, c2: np.ndarray) -> complex:
    """<c1|c2> over all axes (conjugate-linear in the first slot)."""
    return complex(np.vdot(c1, c2))


def normalize(c: np.ndarray) -> np.ndarray:
    n = norm(c)
    if n == 0:
        raise ValueError("cannot normalize the zero state")
    return c / n


def apply_op(op: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Apply a composite-space operator to one (N, dim) component."""
    return (op @ c.reshape(-1)).reshape(c.shape)


def tail_mass(c: np.ndarray, f: FockSpace) -> float:
    """Probability weight sitting in the guard band, for the whole stack."""
    total = float(np.sum(np.abs(c) ** 2))
    if total == 0:
        return 0.0
    guard = c[..., f.checked_dim :, :]
    return float(np.sum(np.abs(guard) ** 2)) / total


def phase_fix_highest(c: np.ndarray, rtol: float = 1e-12) -> np.ndarray:
    """Rotate a finite-sum state so its highest occupied level is positive real.

    The pivot is the largest-|.| spin amplitude on the highest Fock level
    that carries any weight above rtol * max|c| (first index on ties).
    """
    peak = float(np.max(np.abs(c)))
    if peak == 0:
        return c
    row_mass = np.max(np.abs(c), axis=-1)
    occupied = np.nonzero(row_mass > rtol * peak)[0]
    nstar = int(occupied[-1])
    istar = int(np.argmax(np.abs(c[nstar])))
    pivot = c[nstar, istar]
    return c * (abs(pivot) / pivot)


def phase_fix_largest(c: np.ndarray) -> np.ndarray:
    """Rotate a stack so the largest-|.| amplitude of component 1 is
    positive real; used when comparing states built by different routes."""
    comp = c[0] if c.ndim == 3 else c
    flat = comp.reshape(-1)
    pivot = flat[np.argmax(np.abs(flat))]
    if abs(pivot) == 0:
        return c
    return c * (abs(pivot) / pivot)


@dataclass
class VectorState:
    """K stacked components plus the context they solve.

    ``amplitudes`` has shape (K, dim_fock, dim_spin).  ``mtilde`` is the
    K x K eigenvalue matrix of the defining relation A psi = mtilde psi
    (the scalar offset beta is carried inside ``beta``).  ``family`` names
    the construction route; ``meta`` carries route-specific details such as
    branch flips.
    """

    amplitudes: np.ndarray
    fock: FockSpace
    rep: Su2Rep
    beta: BetaParams
    mtilde: np.ndarray
    family: str
    meta: dict = field(default_factory=dict)

    @property
    def k_components(self) -> int:
        return self.amplitudes.shape[0]

    def normalized(self) -> "VectorState":
        return VectorState(
            amplitudes=normalize(self.amplitudes),
            fock=self.fock,
            rep=self.rep,
            beta=self.beta,
            mtilde=self.mtilde,
            family=self.family,
            meta=dict(self.meta),
        )
