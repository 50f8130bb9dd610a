"""Canonical JSON state files.

The writer is deterministic byte for byte: keys sorted, no whitespace,
floats through ``%.17g`` (shortest round-trip-safe fixed rule), complex
numbers as two-element [re, im] arrays.  Non-finite numbers are rejected.
State documents carry a sha256 checksum over the canonical payload so
accidental edits are detectable.
"""

from __future__ import annotations

import dataclasses
import enum
import hashlib
import json
import math
from typing import Any

import numpy as np

from .fock import FockSpace
from .states import VectorState
from .su2 import BetaParams, Su2Rep

__all__ = [
    "canonical_json",
    "state_to_doc",
    "doc_to_state",
    "write_state",
    "read_state",
    "checksum",
]

FORMAT_NAME = "vaes-state"
FORMAT_VERSION = 1


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("non-finite numbers cannot be serialized")
    return "%.17g" % x


def _emit(obj: Any, out: list) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=True))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_fmt_float(float(obj)))
    elif isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        out.append("[" + _fmt_float(z.real) + "," + _fmt_float(z.imag) + "]")
    elif isinstance(obj, np.ndarray):
        _emit(obj.tolist(), out)
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise TypeError("object keys must be strings")
            if i:
                out.append(",")
            out.append(json.dumps(key, ensure_ascii=True))
            out.append(":")
            _emit(obj[key], out)
        out.append("}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_json(obj: Any) -> str:
    out: list = []
    _emit(obj, out)
    return "".join(out)


def checksum(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode("ascii")).hexdigest()


def _pair(z: complex) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _jsonable(obj: Any) -> Any:
    """Best-effort coercion of metadata values to writer-friendly types."""
    if obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return _pair(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return _jsonable(dataclasses.asdict(obj))
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return repr(obj)


def _complex_matrix(rows) -> list:
    return [[_pair(z) for z in row] for row in np.asarray(rows, dtype=complex)]


def state_to_doc(state: VectorState) -> dict:
    amps = np.asarray(state.amplitudes, dtype=complex)
    doc = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "fock": {"dim": state.fock.dim, "guard": state.fock.guard},
        "twoj": state.rep.twoj,
        "family": state.family,
        "beta": {
            "beta": _pair(state.beta.beta),
            "beta_plus": _pair(state.beta.beta_plus),
            "beta_minus": _pair(state.beta.beta_minus),
            "beta_3": _pair(state.beta.beta_3),
        },
        "mtilde": _complex_matrix(state.mtilde),
        "amplitudes": [
            [[_pair(z) for z in row] for row in comp] for comp in amps
        ],
        "meta": _jsonable(state.meta),
    }
    doc["checksum"] = checksum(doc)
    return doc


def _unpair(v) -> complex:
    return complex(float(v[0]), float(v[1]))


def doc_to_state(doc: dict) -> VectorState:
    if doc.get("format") != FORMAT_NAME:
        raise ValueError("not a state document")
    if doc.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported state document version {doc.get('version')!r}")
    stored = doc.get("checksum")
    trimmed = {k: v for k, v in doc.items() if k != "checksum"}
    if stored != checksum(trimmed):
        raise ValueError("checksum mismatch: state document was modified")

    f = FockSpace(dim=int(doc["fock"]["dim"]), guard=int(doc["fock"]["guard"]))
    rep = Su2Rep(int(doc["twoj"]))
    b = doc["beta"]
    beta = BetaParams(
        beta=_unpair(b["beta"]),
        beta_plus=_unpair(b["beta_plus"]),
        beta_minus=_unpair(b["beta_minus"]),
        beta_3=_unpair(b["beta_3"]),
    )
    mtilde = np.array(
        [[_unpair(v) for v in row] for row in doc["mtilde"]], dtype=complex
    )
    amps = np.array(
        [
            [[_unpair(v) for v in row] for row in comp]
            for comp in doc["amplitudes"]
        ],
        dtype=complex,
    )
    if amps.shape[1:] != (f.dim, rep.dim):
        raise ValueError("amplitude array does not match the declared spaces")
    return VectorState(
        amplitudes=amps,
        fock=f,
        rep=rep,
        beta=beta,
        mtilde=mtilde,
        family=str(doc["family"]),
        meta=dict(doc.get("meta") or {}),
    )


def write_state(path: str, state: VectorState) -> None:
    doc = state_to_doc(state)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(canonical_json(doc))
        fh.write("\n")


def read_state(path: str) -> VectorState:
    with open(path, "r", encoding="ascii") as fh:
        return doc_to_state(json.load(fh))
