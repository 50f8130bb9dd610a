"""Truncated boson mode: Fock-space operators and reference states.

A FockSpace is a hard truncation to the first ``dim`` number states plus a
``guard`` band: the top ``guard`` levels absorb truncation artifacts and are
excluded whenever residuals or tail masses are judged.  The commutator
[a, a†] on the truncated space is the identity except for the corner entry
-(dim-1) at the top level, which is why a guard band exists at all.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linops import expm

__all__ = [
    "FockSpace",
    "annihilator",
    "creation",
    "number_operator",
    "vacuum",
    "coherent",
    "displacement",
    "squeeze_lift",
]


@dataclass(frozen=True)
class FockSpace:
    """Truncation parameters for one boson mode."""

    dim: int = 64
    guard: int = 8

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("FockSpace needs dim >= 2")
        if not 0 <= self.guard < self.dim:
            raise ValueError("guard must satisfy 0 <= guard < dim")

    @property
    def checked_dim(self) -> int:
        """Number of levels kept when judging residuals and tails."""
        return self.dim - self.guard


@lru_cache(maxsize=32)
def _annihilator(dim: int) -> np.ndarray:
    a = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        a[n - 1, n] = np.sqrt(n)
    a.flags.writeable = False
    return a


def annihilator(f: FockSpace) -> np.ndarray:
    """Matrix of a with a|n> = sqrt(n)|n-1>, i.e. a[n-1, n] = sqrt(n)."""
    return _annihilator(f.dim)


def creation(f: FockSpace) -> np.ndarray:
    return annihilator(f).conj().T


def number_operator(f: FockSpace) -> np.ndarray:
    return np.diag(np.arange(f.dim, dtype=complex))


def vacuum(f: FockSpace) -> np.ndarray:
    v = np.zeros(f.dim, dtype=complex)
    v[0] = 1.0
    return v


def coherent(f: FockSpace, z: complex) -> np.ndarray:
    """Coherent state |z>, renormalized after truncation.

    Amplitudes follow the recurrence c_n = c_{n-1} z / sqrt(n); dividing by
    the truncated norm keeps <z|z> = 1 exactly on the finite space.
    """
    c = np.zeros(f.dim, dtype=complex)
    c[0] = 1.0
    for n in range(1, f.dim):
        c[n] = c[n - 1] * z / np.sqrt(n)
    return c / np.linalg.norm(c)


def displacement(f: FockSpace, z: complex) -> np.ndarray:
    """D(z) = exp(z a† - z* a) on the truncated space."""
    a = annihilator(f)
    return expm(z * a.conj().T - np.conj(z) * a)


def squeeze_lift(f: FockSpace, alpha_plus: complex) -> np.ndarray:
    """exp(-(alpha_plus/2) (a†)²), the boson factor mapping solutions of the
    plain problem to solutions with an added alpha_plus a† term.

    The untruncated operator is unbounded; amplitudes of the image state
    decay only for |alpha_plus| < 1, so larger values are rejected and
    |alpha_plus| > 0.5 warns that the guard band may not absorb the tail.
    """
    mag = abs(alpha_plus)
    if mag >= 1.0:
        raise ValueError("squeeze_lift requires |alpha_plus| < 1")
    if mag > 0.5:
        warnings.warn(
            "squeeze_lift with |alpha_plus| > 0.5 converges slowly; "
            "expect large truncation tails",
            stacklevel=2,
        )
    adag = creation(f)
    return expm(-0.5 * alpha_plus * (adag @ adag))
