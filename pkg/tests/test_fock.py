"""Truncated oscillator space: operator matrix elements and guard-band behavior."""

import math

import numpy as np
import numpy.testing as npt
import pytest

from vaes.fock import (
    FockSpace,
    annihilator,
    coherent,
    creation,
    displacement,
    number_operator,
    squeeze_lift,
    vacuum,
)

F = FockSpace(64, 8)


def test_matrix_elements():
    a = annihilator(F)
    for n in range(1, F.dim):
        assert a[n - 1, n] == pytest.approx(math.sqrt(n))
    npt.assert_array_equal(creation(F), a.conj().T)
    npt.assert_array_equal(number_operator(F), np.diag(np.arange(F.dim)))


def test_ccr_inside_truncation():
    a = annihilator(F)
    comm = a @ a.conj().T - a.conj().T @ a
    # identity except the last diagonal entry, which truncation breaks
    npt.assert_allclose(comm[: F.dim - 1, : F.dim - 1], np.eye(F.dim - 1), atol=1e-12)
    assert comm[F.dim - 1, F.dim - 1] == pytest.approx(-(F.dim - 1))


def test_vacuum():
    v = vacuum(F)
    assert v[0] == 1.0
    assert np.count_nonzero(v) == 1


@pytest.mark.parametrize("z", [0.3, 1.2 - 0.8j, -2.0 + 0.5j])
def test_coherent_is_eigenvector(z):
    c = coherent(F, z)
    assert abs(np.linalg.norm(c) - 1.0) < 1e-12
    resid = annihilator(F) @ c - z * c
    assert np.linalg.norm(resid[: F.checked_dim]) < 1e-12


def test_displacement_unitary_and_vacuum_action():
    z = 0.9 - 0.4j
    d = displacement(F, z)
    npt.assert_allclose(d @ d.conj().T, np.eye(F.dim), atol=1e-10)
    npt.assert_allclose(d @ vacuum(F), coherent(F, z), atol=1e-12)


def test_squeeze_lift_conjugation():
    """S^-1 (a + alpha a~) S = a on the well-resolved block."""
    alpha = 0.18 + 0.07j
    s = squeeze_lift(F, alpha)
    a = annihilator(F)
    op = a + alpha * a.conj().T
    lhs = np.linalg.solve(s, op @ s)
    keep = F.dim // 2
    npt.assert_allclose(lhs[:keep, :keep], a[:keep, :keep], atol=1e-9)


def test_guard_band_bookkeeping():
    f = FockSpace(32, 4)
    assert f.checked_dim == 28
    with pytest.raises(ValueError):
        FockSpace(8, 8)
