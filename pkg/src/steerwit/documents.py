"""OperatorDocument JSON format.

A document is an object with exactly one of

* ``"matrix"``: 4x4 nested list of ``[re, im]`` pairs, or
* ``"pauli"``: ``{"a": [3], "b": [3], "T": [[3] x 3]}``

and an optional ``"label"`` string.  A file may hold one document or a list.
"""
import json

import numpy as np

from .pauli import PauliForm, check_operator, normalize, reconstruct


class DocumentError(ValueError):
    """The input does not parse as an OperatorDocument."""


def _real_array(x, shape, what):
    try:
        arr = np.asarray(x, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"{what} must be numeric") from exc
    if arr.shape != shape:
        raise DocumentError(f"{what} must have shape {shape}, got {arr.shape}")
    return arr


def parse_document(doc, normalize_trace=False):
    """Return ``(label, operator)``; raises DocumentError or a ValidationError."""
    if not isinstance(doc, dict):
        raise DocumentError("operator document must be a JSON object")
    has_m, has_p = "matrix" in doc, "pauli" in doc
    if has_m == has_p:
        raise DocumentError("document needs exactly one of 'matrix' or 'pauli'")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise DocumentError("label must be a string")
    if has_m:
        m = _real_array(doc["matrix"], (4, 4, 2), "matrix")
        R = m[..., 0] + 1j * m[..., 1]
    else:
        p = doc["pauli"]
        if not isinstance(p, dict):
            raise DocumentError("pauli must be an object with a, b, T")
        try:
            R = reconstruct(PauliForm(_real_array(p["a"], (3,), "a"),
                                      _real_array(p["b"], (3,), "b"),
                                      _real_array(p["T"], (3, 3), "T")))
        except KeyError as exc:
            raise DocumentError(f"pauli form is missing {exc}") from exc
    if normalize_trace:
        R = normalize(R)
    return label, check_operator(R)


def load_documents(text, normalize_trace=False):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from exc
    docs = data if isinstance(data, list) else [data]
    if not docs:
        raise DocumentError("empty document list")
    return [parse_document(d, normalize_trace) for d in docs]


def _clean(x):
    v = round(float(x), 15)
    return 0.0 if v == 0 else v


def operator_document(R, label=""):
    R = np.asarray(R, dtype=complex)
    matrix = [[[_clean(z.real), _clean(z.imag)] for z in row] for row in R]
    return {"label": label, "matrix": matrix}


def dumps_document(R, label=""):
    return json.dumps(operator_document(R, label))
