"""Dense linear-algebra primitives shared by every other module.

Everything here works on plain complex numpy arrays.  Matrices are small
(tensor products of a truncated boson mode with one spin multiplet), so
dense routines from numpy/scipy are used throughout.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = [
    "EXPM_SIZE_CAP",
    "Diagonalization",
    "DefectReport",
    "kron",
    "is_normal",
    "eig",
    "expm",
    "matrix_function",
    "principal_sqrt",
    "arctan_complex_log",
]

# expm cost grows cubically; anything larger than this is a config error,
# not a legitimate request.
EXPM_SIZE_CAP = 4096


@dataclass(frozen=True)
class Diagonalization:
    """Result of diagonalizing a square matrix M = P D P^-1.

    ``diagonal`` holds the eigenvalues sorted ascending by (real, imag);
    column k of ``passing`` is the eigenvector for ``diagonal[k]``.
    ``is_unitary`` is True when the unitary (normal-matrix) route was taken,
    in which case ``passing_inverse`` is the conjugate transpose.
    """

    passing: np.ndarray
    passing_inverse: np.ndarray
    diagonal: np.ndarray
    is_unitary: bool


@dataclass(frozen=True)
class DefectReport:
    """Evidence that a matrix is not diagonalizable.

    ``eigenvalue`` is the offending (clustered) eigenvalue whose geometric
    multiplicity fell short of its algebraic multiplicity.
    """

    eigenvalue: complex
    algebraic_multiplicity: int
    geometric_multiplicity: int


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with row-major index law (i_a, i_b) -> i_a*rows_b + i_b.

    The first factor is the slow index.  All composite operators in this
    package put the boson factor first and the spin factor second.
    """
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _fro(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, "fro"))


def is_normal(m: np.ndarray, tol: float = 1e-12) -> bool:
    """True when ||M M† - M† M||_F <= tol * ||M||_F² (zero matrix counts)."""
    m = np.asarray(m, dtype=complex)
    scale = _fro(m) ** 2
    if scale == 0.0:
        return True
    comm = m @ m.conj().T - m.conj().T @ m
    return _fro(comm) <= tol * scale


def _eig_sort_key(w: np.ndarray) -> np.ndarray:
    return np.lexsort((w.imag, w.real))


def _fix_column_phases(p: np.ndarray) -> np.ndarray:
    """Normalize columns and rotate each so its largest-|entry| is positive real."""
    p = p.copy()
    for k in range(p.shape[1]):
        col = p[:, k]
        nrm = np.linalg.norm(col)
        if nrm > 0:
            col = col / nrm
        pivot = col[np.argmax(np.abs(col))]
        if abs(pivot) > 0:
            col = col * (abs(pivot) / pivot)
        p[:, k] = col
    return p


def eig(m: np.ndarray, tol: float = 1e-12):
    """Diagonalize ``m``, or report the defect that prevents it.

    Returns a Diagonalization on success and a DefectReport when some
    eigenvalue's geometric multiplicity is smaller than its algebraic one.
    Normal input takes the unitary route (complex Schur form), so the
    passing matrix is unitary and its inverse exact; otherwise the passing
    matrix collects normalized eigenvectors with a deterministic phase.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("eig expects a square matrix")

    if is_normal(m, tol):
        t, q = scipy.linalg.schur(m, output="complex")
        w = np.diag(t).copy()
        order = _eig_sort_key(w)
        p = _fix_column_phases(q[:, order])
        return Diagonalization(
            passing=p,
            passing_inverse=p.conj().T,
            diagonal=w[order],
            is_unitary=True,
        )

    w, v = np.linalg.eig(m)
    order = _eig_sort_key(w)
    w, v = w[order], v[:, order]

    # Cluster equal eigenvalues and compare multiplicities.  Rank is taken
    # from the SVD with a fixed relative cutoff.
    scale = max(1.0, float(np.max(np.abs(w)))) if n else 1.0
    i = 0
    while i < n:
        jstop = i + 1
        while jstop < n and abs(w[jstop] - w[i]) <= 1e-8 * scale:
            jstop += 1
        alg = jstop - i
        if alg > 1:
            lam = complex(np.mean(w[i:jstop]))
            s = np.linalg.svd(m - lam * np.eye(n), compute_uv=False)
            rank = int(np.sum(s > 1e-10 * (s[0] if s[0] > 0 else 1.0)))
            geo = n - rank
            if geo < alg:
                return DefectReport(
                    eigenvalue=lam,
                    algebraic_multiplicity=alg,
                    geometric_multiplicity=geo,
                )
        i = jstop

    p = _fix_column_phases(v)
    return Diagonalization(
        passing=p,
        passing_inverse=np.linalg.inv(p),
        diagonal=w,
        is_unitary=False,
    )


def expm(m: np.ndarray) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring Padé via scipy).

    Refuses matrices above EXPM_SIZE_CAP; configurations that large indicate
    a mistake upstream, not a real workload.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape[0] > EXPM_SIZE_CAP:
        raise ValueError(
            f"expm size {m.shape[0]} exceeds cap {EXPM_SIZE_CAP}"
        )
    return scipy.linalg.expm(m)


def matrix_function(m: np.ndarray, f) -> np.ndarray:
    """Apply a scalar function to a normal matrix as U f(D) U†.

    ``f`` must accept a complex ndarray of eigenvalues.  Non-normal input is
    rejected: the spectral calculus used here is only defined for normal
    matrices.
    """
    m = np.asarray(m, dtype=complex)
    if not is_normal(m):
        raise ValueError("matrix_function requires a normal matrix")
    d = eig(m)
    return d.passing @ np.diag(f(d.diagonal)) @ d.passing_inverse


def principal_sqrt(z: complex) -> complex:
    """Square root with Re >= 0, ties broken toward Im >= 0.

    cmath.sqrt already lands in the closed right half-plane; the explicit
    flip avoids depending on signed-zero behavior on the branch cut.
    """
    s = cmath.sqrt(z)
    if s.real < 0 or (s.real == 0 and s.imag < 0):
        s = -s
    return s


def arctan_complex_log(z: complex, tol: float = 1e-12) -> complex:
    """Complex arctan through its logarithmic form with explicit branch rules.

    Writes arctan(z) = -delta/2 + (i/2) ln(num/den) with
    num = sqrt((1-|z|²)² + 4 Re(z)²), den = 1 - 2 Im(z) + |z|², and

    * delta = arctan(2 Re(z) / (|z|² - 1)) when |z| != 1,
    * delta = -pi/2 when |z| = 1 and Re(z) > 0,
    * delta = +pi/2 when |z| = 1 and Re(z) < 0.

    Inside the closed unit disk this equals the principal arctan; outside it
    the real part is shifted by ±pi/2 (the single-argument arctan cannot see
    the quadrant).  Both values are valid half-angles for the rotations this
    feeds: they differ by a rotation by pi, which permutes eigenvectors.
    z = ±i is a pole of arctan and is rejected.
    """
    z = complex(z)
    x, y = z.real, z.imag
    r2 = x * x + y * y
    on_circle = abs(math.sqrt(r2) - 1.0) <= tol
    if on_circle and abs(x) <= tol:
        raise ValueError("arctan is singular at z = ±i")
    if on_circle:
        delta = -math.pi / 2 if x > 0 else math.pi / 2
    else:
        delta = math.atan(2 * x / (r2 - 1.0))
    num = math.sqrt((1.0 - r2) ** 2 + 4.0 * x * x)
    den = 1.0 - 2.0 * y + r2
    return -delta / 2 + 0.5j * math.log(num / den)
