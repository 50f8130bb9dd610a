import numpy as np
import pytest

from vaes.algebra import build_A
from vaes.fock import FockSpace
from vaes.presets import PRESETS, build_preset, catalog
from vaes.verify import eigen_residual


def test_catalog_lists_all_presets():
    rows = catalog()
    assert len(rows) == len(PRESETS)
    keys = {r["key"] for r in rows}
    assert "VCS-j=1/2" in keys
    for r in rows:
        assert r["description"]
        assert r["twoj"] >= 1
        assert r["k"] >= 1


@pytest.mark.parametrize("key", [p.key for p in PRESETS])
def test_every_preset_solves_its_equation(key):
    st = build_preset(key)
    op = build_A(st.fock, st.rep, st.beta)
    r = eigen_residual(op, st.mtilde, st)
    assert r.passed, (key, r.relative_residual, r.tail_mass)
    assert abs(np.linalg.norm(st.amplitudes) - 1.0) < 1e-12


def test_alias_resolves():
    a = build_preset("standard-HW")
    b = build_preset("standard-VCS+j-j")
    assert a.family == b.family
    assert np.array_equal(a.amplitudes, b.amplitudes)


def test_custom_fock_space():
    st = build_preset("VCS-j=1/2", FockSpace(32, 4))
    assert st.fock.dim == 32


def test_unknown_key():
    with pytest.raises(KeyError):
        build_preset("no-such-preset")
