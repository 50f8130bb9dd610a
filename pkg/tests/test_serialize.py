"""Canonical JSON emitter and the checksummed state document format."""

import json

import numpy as np
import pytest

from vaes.fock import FockSpace
from vaes.serialize import (
    canonical_json,
    checksum,
    doc_to_state,
    read_state,
    state_to_doc,
    write_state,
)
from vaes.su2 import Su2Rep
from vaes.vector_states import solve_annihilator

F = FockSpace(32, 4)
MT = 0.7 * np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def _state():
    return solve_annihilator(F, Su2Rep(1), MT)


def test_canonical_json_is_key_order_independent():
    a = canonical_json({"b": 1, "a": [2, 3]})
    b = canonical_json({"a": [2, 3], "b": 1})
    assert a == b == '{"a":[2,3],"b":1}'


def test_canonical_json_floats_round_trip_exactly():
    vals = [0.1, 1 / 3, 2**-52, 1e300, -7.25]
    s = canonical_json(vals)
    assert json.loads(s) == vals  # %.17g keeps doubles bit-exact


def test_canonical_json_complex_and_arrays():
    s = canonical_json({"z": 1 + 2j, "m": np.array([[1.0, 0.5]])})
    assert json.loads(s) == {"z": [1.0, 2.0], "m": [[1.0, 0.5]]}


def test_canonical_json_rejects_nonfinite():
    with pytest.raises(ValueError):
        canonical_json(float("nan"))
    with pytest.raises(ValueError):
        canonical_json({"x": np.inf})


def test_canonical_json_rejects_unknown_types():
    with pytest.raises(TypeError):
        canonical_json(object())


def test_checksum_changes_with_content():
    assert checksum({"a": 1}) != checksum({"a": 2})
    assert len(checksum({"a": 1})) == 64  # sha256 hex


def test_document_round_trip_is_bit_exact():
    st = _state()
    doc = state_to_doc(st)
    back = doc_to_state(doc)
    assert np.array_equal(back.amplitudes, st.amplitudes)  # no tolerance
    assert np.array_equal(back.mtilde, st.mtilde)
    assert back.fock == st.fock
    assert back.rep.twoj == st.rep.twoj
    assert back.family == st.family


def test_document_rejects_tampering():
    doc = state_to_doc(_state())
    doc = json.loads(canonical_json(doc))
    doc["amplitudes"][0][0][0][0] += 1e-9
    with pytest.raises(ValueError, match="checksum"):
        doc_to_state(doc)


def test_document_rejects_wrong_format():
    doc = state_to_doc(_state())
    bad = dict(doc)
    bad["format"] = "something-else"
    with pytest.raises(ValueError):
        doc_to_state(bad)


def test_file_round_trip(tmp_path):
    st = _state()
    path = tmp_path / "state.json"
    write_state(str(path), st)
    raw = path.read_bytes()
    assert raw.endswith(b"\n")
    back = read_state(str(path))
    assert np.array_equal(back.amplitudes, st.amplitudes)

    # two writes of the same state are byte-identical
    path2 = tmp_path / "state2.json"
    write_state(str(path2), _state())
    assert raw == path2.read_bytes()
