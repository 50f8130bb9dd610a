"""Spin multiplets, the coupling-parameter family, and its diagonalizers.

A spin-j multiplet is indexed by twoj = 2j (any non-negative integer).  The
basis is ordered by ascending magnetic number m = -j, -j+1, ..., +j, so
J_plus has its entries one below the diagonal and J_minus one above.

The four complex couplings (beta, beta_plus, beta_minus, beta_3) define the
spin part B = beta_plus*J_minus + beta_minus*J_plus + beta_3*J_3 of the
combined boson+spin lowering operator.  Everything downstream hinges on the
discriminant root b = sqrt(4*beta_plus*beta_minus + beta_3^2): for b != 0
the spin part is diagonalizable with spectrum {m*b}, and the two
independent routes to its diagonalizer (a closed-form hypergeometric-sum
matrix and a one-parameter rotation exponential) live here.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .linops import expm, principal_sqrt

__all__ = [
    "Su2Rep",
    "BetaParams",
    "CaseTag",
    "generators",
    "casimir",
    "b_parameter",
    "family_is_normal",
    "classify",
    "beta_operator",
    "m_matrix",
    "t_matrix_jacobi",
    "t_matrix_exp",
    "passing_matrix",
]

# Relative pole guard: when |b + beta_3| falls below this times |b| the
# other square-root branch is used (and recorded) to keep 1/(b+beta_3)
# finite in the diagonalizer formulas.
_POLE_RTOL = 1e-12


@dataclass(frozen=True)
class Su2Rep:
    """Spin multiplet of dimension twoj + 1 with ascending-m basis."""

    twoj: int

    def __post_init__(self):
        if not isinstance(self.twoj, (int, np.integer)) or self.twoj < 0:
            raise ValueError("twoj must be a non-negative integer")
        object.__setattr__(self, "twoj", int(self.twoj))

    @property
    def j(self) -> float:
        return self.twoj / 2.0

    @property
    def dim(self) -> int:
        return self.twoj + 1

    @property
    def m_values(self) -> np.ndarray:
        """Magnetic numbers, ascending: m_i = -j + i."""
        return (np.arange(self.dim) - self.twoj / 2.0).astype(float)


@dataclass(frozen=True)
class BetaParams:
    """Scalar offset and the three spin couplings of the lowering operator."""

    beta: complex = 0.0
    beta_plus: complex = 0.0
    beta_minus: complex = 0.0
    beta_3: complex = 0.0

    def discriminant(self) -> complex:
        return 4 * self.beta_plus * self.beta_minus + self.beta_3**2

    def scale(self) -> float:
        """Magnitude scale of the spin couplings, for relative tolerances."""
        return max(
            abs(self.beta_plus), abs(self.beta_minus), abs(self.beta_3)
        )


class CaseTag(enum.Enum):
    ALL_ZERO = "all-zero"
    B_NONZERO_NORMAL = "b-nonzero-normal"
    B_NONZERO_DIAGONALIZABLE = "b-nonzero-diagonalizable"
    B_ZERO_LOWER = "b-zero-lower"
    B_ZERO_UPPER = "b-zero-upper"
    B_ZERO_FULL = "b-zero-full"


@lru_cache(maxsize=64)
def _generators(twoj: int):
    dim = twoj + 1
    jp = np.zeros((dim, dim), dtype=complex)
    jm = np.zeros((dim, dim), dtype=complex)
    for i in range(dim - 1):
        c = math.sqrt((twoj - i) * (i + 1))
        jp[i + 1, i] = c
        jm[i, i + 1] = c
    j3 = np.diag((np.arange(dim) - twoj / 2.0).astype(complex))
    for g in (jp, jm, j3):
        g.flags.writeable = False
    return jp, jm, j3


def generators(rep: Su2Rep):
    """(J_plus, J_minus, J_3) as read-only arrays; cached per twoj."""
    return _generators(rep.twoj)


def casimir(rep: Su2Rep) -> np.ndarray:
    """J_plus J_minus + J_3² - J_3 = j(j+1) I, assembled from the parts."""
    jp, jm, j3 = generators(rep)
    return jp @ jm + j3 @ j3 - j3


def b_parameter(p: BetaParams) -> complex:
    """Principal root of the discriminant: Re b >= 0, ties toward Im b >= 0."""
    return principal_sqrt(p.discriminant())


def family_is_normal(p: BetaParams, tol: float = 1e-12) -> bool:
    """Couplings giving a normal spin matrix for every j.

    Requires |beta_plus| = |beta_minus| together with
    beta_3 conj(beta_plus) - conj(beta_3) beta_minus = 0.
    """
    s = p.scale()
    if s == 0.0:
        return True
    imbalance = abs(abs(p.beta_plus) - abs(p.beta_minus))
    cross = abs(
        p.beta_3 * np.conj(p.beta_plus) - np.conj(p.beta_3) * p.beta_minus
    )
    return imbalance <= tol * s and cross <= tol * s * s


def _warn_band(value: float, tol: float, scale: float, what: str):
    if scale > 0 and tol * scale < value <= 1e-6 * scale:
        warnings.warn(
            f"{what} is within the 1e-6 warning band of a case boundary",
            stacklevel=3,
        )


def classify(p: BetaParams, tol: float = 1e-10) -> CaseTag:
    """Sort couplings into the case families driving every construction.

    b = 0 happens in exactly four patterns: all couplings zero; only
    beta_plus nonzero; only beta_minus nonzero; or all three nonzero with a
    vanishing discriminant.  Values within [tol, 1e-6] (relative) of a
    boundary emit a warning naming the near-miss.
    """
    s = p.scale()
    if s == 0.0:
        return CaseTag.ALL_ZERO

    disc = abs(p.discriminant())
    disc_scale = max(
        4 * abs(p.beta_plus) * abs(p.beta_minus) + abs(p.beta_3) ** 2, s * s
    )
    _warn_band(disc, tol, disc_scale, "discriminant |4 b+ b- + b3^2|")
    b_is_zero = disc <= tol * disc_scale

    zp = abs(p.beta_plus) <= tol * s
    zm = abs(p.beta_minus) <= tol * s
    z3 = abs(p.beta_3) <= tol * s
    for val, name in (
        (abs(p.beta_plus), "|beta_plus|"),
        (abs(p.beta_minus), "|beta_minus|"),
        (abs(p.beta_3), "|beta_3|"),
    ):
        _warn_band(val, tol, s, name)

    if not b_is_zero:
        if family_is_normal(p, tol):
            return CaseTag.B_NONZERO_NORMAL
        return CaseTag.B_NONZERO_DIAGONALIZABLE

    if zm and z3 and not zp:
        return CaseTag.B_ZERO_LOWER
    if zp and z3 and not zm:
        return CaseTag.B_ZERO_UPPER
    if not (zp or zm or z3):
        return CaseTag.B_ZERO_FULL
    # A vanishing discriminant with exactly one more coupling zero is
    # impossible over exact numbers; numerically it means we are inside the
    # tolerance ball of one of the legitimate patterns.
    raise ValueError(
        "couplings are too close to several case boundaries to classify; "
        "tighten them or pass a larger tol"
    )


def beta_operator(rep: Su2Rep, p: BetaParams) -> np.ndarray:
    """Spin part B = beta_plus J_minus + beta_minus J_plus + beta_3 J_3."""
    jp, jm, j3 = generators(rep)
    return p.beta_plus * jm + p.beta_minus * jp + p.beta_3 * j3


def m_matrix(rep: Su2Rep, p: BetaParams, convention: str = "su2") -> np.ndarray:
    """Eigenvalue matrix acting on the stack of component states.

    Two layouts of the same spectrum {beta + m b}:

    * "su2": ascending-m rows, beta I - beta_plus J_minus - beta_minus
      J_plus + beta_3 J_3 (the sign flip on the off-diagonal couplings is
      what the component-recursion produces).
    * "ode": the descending-m layout the first-order recursion is usually
      displayed in; equals the su2 form transposed and reversed.
    """
    jp, jm, j3 = generators(rep)
    msu2 = (
        p.beta * np.eye(rep.dim)
        - p.beta_plus * jm
        - p.beta_minus * jp
        + p.beta_3 * j3
    )
    if convention == "su2":
        return msu2
    if convention == "ode":
        return msu2.T[::-1, ::-1].copy()
    raise ValueError(f"unknown m_matrix convention {convention!r}")


def _resolve_branch(p: BetaParams):
    """Principal b, flipped away from the b + beta_3 = 0 pole if needed."""
    b = b_parameter(p)
    if b == 0:
        raise ValueError("diagonalizer requires b != 0")
    flipped = False
    if abs(b + p.beta_3) < _POLE_RTOL * abs(b):
        b = -b
        flipped = True
    return b, flipped


def _jac_sum(twoj: int, twou: int, twov: int, w: complex) -> complex:
    """Terminating hypergeometric-type sum entering each matrix element.

    Computes ((j+v)!/(j-u)!) * sum_n (-1)^n w^n (j-u+n)! /
    (n! (n+v-u)! (j+u-n)!) with exact rational coefficients; w is the
    complex expansion point (1 - beta_3/b)/2.
    """
    jpv = (twoj + twov) // 2
    jmu = (twoj - twou) // 2
    jpu = (twoj + twou) // 2
    vmu = (twov - twou) // 2
    pref = Fraction(factorial(jpv), factorial(jmu))
    total = 0.0 + 0.0j
    wn = 1.0 + 0.0j
    for n in range(jpu + 1):
        coeff = pref * Fraction(
            factorial(jmu + n),
            factorial(n) * factorial(n + vmu) * factorial(jpu - n),
        )
        if n % 2:
            coeff = -coeff
        total += float(coeff) * wn
        wn *= w
    return total


def t_matrix_jacobi(rep: Su2Rep, p: BetaParams):
    """Closed-form diagonalizer of the spin part, column l <-> eigenvalue l*b.

    Entry (m, l) is assembled as

        (2b/(b+beta_3))^l * pow * sqrt(factorial ratio) * S

    where the column factor uses the principal logarithm (l may be a
    half-integer), `pow` is an integer power of -2*beta_minus/(b+beta_3)
    above the diagonal (m >= l) or of beta_plus/b below it, and S is the
    terminating sum of _jac_sum.  All branch content sits in the single
    column factor, so the product is branch-consistent entry by entry.

    Returns (T, meta) with meta recording the b branch actually used.
    """
    b, flipped = _resolve_branch(p)
    twoj, dim = rep.twoj, rep.dim
    x = p.beta_3 / b
    w = (1.0 - x) / 2.0
    denom = b + p.beta_3
    log_col = cmath.log(2 * b / denom)

    t = np.zeros((dim, dim), dtype=complex)
    for c in range(dim):
        twol = -twoj + 2 * c
        gl = cmath.exp((twol / 2.0) * log_col)
        for r in range(dim):
            twom = -twoj + 2 * r
            jpm = (twoj + twom) // 2
            jmm = (twoj - twom) // 2
            jpl = (twoj + twol) // 2
            jml = (twoj - twol) // 2
            if twom >= twol:
                k = (twom - twol) // 2
                powf = (-2 * p.beta_minus / denom) ** k
                ratio = Fraction(
                    factorial(jpl) * factorial(jml),
                    factorial(jpm) * factorial(jmm),
                )
                s = _jac_sum(twoj, twol, twom, w)
            else:
                k = (twol - twom) // 2
                powf = (p.beta_plus / b) ** k
                ratio = Fraction(
                    factorial(jpm) * factorial(jmm),
                    factorial(jpl) * factorial(jml),
                )
                s = _jac_sum(twoj, twom, twol, w)
            t[r, c] = gl * powf * math.sqrt(ratio) * s
    meta = {"b": b, "branch_flipped": flipped, "route": "jacobi"}
    return t, meta


def t_matrix_exp(rep: Su2Rep, p: BetaParams):
    """Same diagonalizer through its rotation-exponential definition.

    T = exp(-(theta/2) (e^{-i phi} J_plus - e^{i phi} J_minus)) with
    tan²(theta/2) = (b-beta_3)/(b+beta_3) and e^{i phi} = sqrt(b+/b-).
    The two principal square roots are correlated: their product times
    (b+beta_3)/2 must reproduce beta_plus, which fixes the relative sign.
    Kept strictly independent of t_matrix_jacobi as a cross-check route.

    Requires both beta_plus and beta_minus nonzero (phi is undefined
    otherwise; the degenerate patterns have triangular diagonalizers).
    """
    if p.beta_plus == 0 or p.beta_minus == 0:
        raise ValueError("t_matrix_exp needs both beta_plus and beta_minus nonzero")
    b, flipped = _resolve_branch(p)
    z = principal_sqrt((b - p.beta_3) / (b + p.beta_3))
    wph = principal_sqrt(p.beta_plus / p.beta_minus)
    target = z * wph * (b + p.beta_3) / 2
    if abs(target - p.beta_plus) > abs(target + p.beta_plus):
        z = -z
    theta_half = cmath.atan(z)
    jp, jm, _ = generators(rep)
    gen = -theta_half * (jp / wph - wph * jm)
    meta = {"b": b, "branch_flipped": flipped, "route": "exp"}
    return expm(gen), meta


def _reversal_if_negative(rep: Su2Rep, p: BetaParams, t: np.ndarray, meta):
    """Reverse columns when the principal b is -beta_3, keeping the
    column-l <-> eigenvalue l*b pairing intact."""
    b = meta["b"]
    if abs(b - p.beta_3) <= abs(b + p.beta_3):
        meta["columns_reversed"] = False
        return t, meta
    meta["columns_reversed"] = True
    return t[:, ::-1].copy(), meta


def passing_matrix(rep: Su2Rep, p: BetaParams):
    """Diagonalizer dispatch over the coupling patterns with b != 0.

    Column l of the result is an eigenvector of beta_operator with
    eigenvalue l*b for the recorded b.  Routes:

    1. beta_plus = beta_minus = 0 (beta_3 != 0): identity.
    2. beta_minus = 0, beta_plus, beta_3 != 0: exp((beta_plus/beta_3) J_minus).
    3. beta_plus = 0, beta_minus, beta_3 != 0: exp(-(beta_minus/beta_3) J_plus).
    4. both beta_plus, beta_minus != 0: the closed-form route.

    Rows 1-3 reverse their columns when the principal branch lands on
    b = -beta_3.  b = 0 with nonzero couplings has no such diagonalizer.
    """
    tag = classify(p)
    if tag in (CaseTag.B_ZERO_LOWER, CaseTag.B_ZERO_UPPER, CaseTag.B_ZERO_FULL):
        raise ValueError("spin part is not diagonalizable when b = 0")
    jp, jm, _ = generators(rep)
    zp = p.beta_plus == 0
    zm = p.beta_minus == 0
    if tag is CaseTag.ALL_ZERO or (zp and zm):
        if tag is CaseTag.ALL_ZERO:
            meta = {"b": 0j, "branch_flipped": False, "route": "identity"}
            t = np.eye(rep.dim, dtype=complex)
            meta["columns_reversed"] = False
            return t, meta
        b, flipped = _resolve_branch(p)
        meta = {"b": b, "branch_flipped": flipped, "route": "identity"}
        return _reversal_if_negative(rep, p, np.eye(rep.dim, dtype=complex), meta)
    if zm:
        b, flipped = _resolve_branch(p)
        meta = {"b": b, "branch_flipped": flipped, "route": "triangular-lower"}
        t = expm((p.beta_plus / p.beta_3) * jm)
        return _reversal_if_negative(rep, p, t, meta)
    if zp:
        b, flipped = _resolve_branch(p)
        meta = {"b": b, "branch_flipped": flipped, "route": "triangular-upper"}
        t = expm(-(p.beta_minus / p.beta_3) * jp)
        return _reversal_if_negative(rep, p, t, meta)
    return t_matrix_jacobi(rep, p)
