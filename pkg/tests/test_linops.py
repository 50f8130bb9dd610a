import numpy as np
import numpy.testing as npt
import pytest
import scipy.linalg

from vaes.linops import (
    DefectReport,
    arctan_complex_log,
    eig,
    expm,
    is_normal,
    kron,
    matrix_function,
    principal_sqrt,
)

rng = np.random.default_rng(7)


def test_kron_matches_numpy():
    a = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    b = rng.standard_normal((2, 5)) + 1j * rng.standard_normal((2, 5))
    npt.assert_array_equal(kron(a, b), np.kron(a, b))


def test_is_normal():
    h = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    h = h + h.conj().T
    assert is_normal(h)
    assert not is_normal(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eig_reconstructs():
    m = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    d = eig(m)
    npt.assert_allclose(
        d.passing @ np.diag(d.diagonal) @ d.passing_inverse, m, atol=1e-12
    )
    npt.assert_allclose(d.passing @ d.passing_inverse, np.eye(5), atol=1e-12)


def test_eig_unitary_flag():
    h = rng.standard_normal((4, 4))
    h = h + h.T
    d = eig(h.astype(complex))
    assert d.is_unitary
    npt.assert_allclose(d.passing_inverse, d.passing.conj().T, atol=1e-12)


def test_eig_reports_defect():
    out = eig(np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex))
    assert isinstance(out, DefectReport)
    assert out.eigenvalue == pytest.approx(1.0)
    assert (out.algebraic_multiplicity, out.geometric_multiplicity) == (2, 1)


def test_expm_oracle():
    m = 0.3 * (rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)))
    npt.assert_allclose(expm(m), scipy.linalg.expm(m), atol=1e-12)


def test_matrix_function_sqrt():
    h = rng.standard_normal((4, 4))
    h = h @ h.T + 4.0 * np.eye(4)  # positive definite
    root = matrix_function(h.astype(complex), np.sqrt)
    npt.assert_allclose(root @ root, h, atol=1e-10)


@pytest.mark.parametrize(
    "z,want",
    [
        (4.0, 2.0),
        (-1.0, 1j),
        (-4.0 + 0j, 2j),
        (2j, 1 + 1j),
    ],
)
def test_principal_sqrt_values(z, want):
    assert abs(principal_sqrt(z) - want) < 1e-14


def test_principal_sqrt_branch():
    # principal branch: result never has negative real part
    for _ in range(50):
        z = complex(rng.standard_normal(), rng.standard_normal())
        w = principal_sqrt(z)
        assert w.real >= -1e-15
        assert abs(w * w - z) < 1e-12


def test_arctan_inside_disk_matches_cmath():
    import cmath

    for _ in range(50):
        r = 0.95 * np.sqrt(rng.random())
        z = r * np.exp(2j * np.pi * rng.random())
        assert abs(arctan_complex_log(z) - cmath.atan(z)) < 1e-12


def test_arctan_outside_disk_is_valid_half_angle():
    # outside the unit disk the real part may sit pi/2 off the principal
    # branch; tan of the result must still solve tan(w) = z or the
    # pi-shifted companion tan(w) = -1/z
    import cmath

    for _ in range(50):
        z = complex(rng.standard_normal(), rng.standard_normal())
        if min(abs(z - 1j), abs(z + 1j)) < 0.2:
            continue
        w = arctan_complex_log(z)
        tw = cmath.tan(w)
        assert min(abs(tw - z), abs(tw + 1.0 / z)) < 1e-10


def test_arctan_rejects_poles():
    with pytest.raises(ValueError):
        arctan_complex_log(1j)
