"""Classification reports: the JSON-serializable summary printed by the CLI."""
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .classification import (OperatorClass, classify_by_determinants, classify_by_ellipsoid,
                             compute_invariants)
from .ellipsoid import TOL_CONTACT, ellipsoid_of, is_inside_bloch_sphere, semiaxes
from .pauli import check_operator
from .witness import analyze_witness

NDIGITS = 12

PROVENANCE = {
    "class": "signs of det B and det B^TB",
    "class_check": "ellipsoid invariants c, u, q, r, chi",
    "block_positive": "max radius of the ellipsoid (secular equation)",
    "is_witness": "block positive and det B < 0",
    "optimal": "ellipsoid is the whole Bloch sphere with chi = +1",
    "weakly_optimal": "ellipsoid touches the Bloch sphere",
    "in_EW4": "W = W^T = W^TB on the matrix",
}


def _num(x):
    if x is None:
        return None
    x = float(x)
    if not math.isfinite(x):
        return None
    v = round(x, NDIGITS)
    return 0.0 if v == 0 else v


def _vec(v):
    return [_num(x) for x in np.ravel(v)]


@dataclass
class ClassificationReport:
    label: str
    summary: str
    operator_class: str
    marginal: bool
    routes: dict
    invariants: dict
    witness: dict
    provenance: dict

    def to_dict(self):
        d = asdict(self)
        d["class"] = d.pop("operator_class")
        order = ["label", "class", "summary", "marginal", "routes", "invariants",
                 "witness", "provenance"]
        return {k: d[k] for k in order}

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["operator_class"] = d.pop("class")
        return cls(**d)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def table(self):
        inv = self.invariants
        w = self.witness
        rows = [
            ("label", self.label),
            ("class", self.operator_class + (" (marginal)" if self.marginal else "")),
            ("summary", self.summary),
            ("routes agree", str(self.routes["agree"])),
            ("centre c", "(" + ", ".join(f"{x:.6g}" for x in inv["c"]) + ")"),
            ("semiaxes", "(" + ", ".join(f"{x:.6g}" for x in inv["semiaxes"]) + ")"),
            ("chirality", str(inv["chi"])),
            ("max radius", _fmt(inv["max_radius"])),
            ("u, q, r", ", ".join(_fmt(inv[k]) for k in ("u", "q", "r"))),
            ("det B", _fmt(inv["det_B"])),
            ("det B^TB", _fmt(inv["det_B_TB"])),
            ("witness", str(w["is_witness"])),
            ("optimal", str(w["optimal"])),
            ("weakly optimal", str(w["weakly_optimal"])),
            ("in EW4", str(w["in_EW4"])),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _fmt(x):
    return "n/a" if x is None else f"{x:.6g}"


def summarize(cls, props):
    if cls is OperatorClass.NOT_BLOCK_POSITIVE:
        return "not block positive"
    head = f"Class {cls.value}"
    if cls is OperatorClass.A:
        return f"{head}, separable state"
    if cls is OperatorClass.B:
        return f"{head}, entangled state"
    if props.optimal:
        return f"{head}, optimal witness"
    if props.weakly_optimal:
        return f"{head}, weakly optimal witness"
    return f"{head}, witness"


def classification_report(B, label="", tol_contact=TOL_CONTACT):
    B = check_operator(B)
    E = ellipsoid_of(B)
    by_det = classify_by_determinants(B, E=E)
    by_geo = classify_by_ellipsoid(E)
    inv = compute_invariants(E, B)
    props = analyze_witness(B, tol_contact)
    lengths, _ = semiaxes(E)
    invariants = {
        "c": _vec(E.c),
        "c_norm": _num(inv.c_norm),
        "semiaxes": _vec(lengths),
        "chi": int(E.chi),
        "det_T_tilde": _num(E.det_T_tilde),
        "gamma_b": _num(inv.gamma_b),
        "u": _num(inv.u),
        "q": _num(inv.q),
        "r": _num(inv.r),
        "lhs_minus": _num(inv.lhs_minus),
        "lhs_plus": _num(inv.lhs_plus),
        "det_B": _num(inv.det_B),
        "det_B_TB": _num(inv.det_B_TB),
        "max_radius": _num(props.max_radius),
        "containment": is_inside_bloch_sphere(E, tol_contact).value,
        "singular_b": bool(E.singular_b),
    }
    witness = {
        "is_witness": props.is_witness,
        "optimal": props.optimal,
        "weakly_optimal": props.weakly_optimal,
        "in_EW4": props.in_EW4,
        "negative_eigenvalue": _num(props.negative_eigenvalue),
        "eigenvalues": _vec(props.eigenvalues),
    }
    routes = {
        "determinants": by_det.cls.value,
        "ellipsoid": by_geo.cls.value,
        "agree": by_det.cls is by_geo.cls,
    }
    return ClassificationReport(
        label=label,
        summary=summarize(by_det.cls, props),
        operator_class=by_det.cls.value,
        marginal=bool(by_det.marginal or by_geo.marginal),
        routes=routes,
        invariants=invariants,
        witness=witness,
        provenance=dict(PROVENANCE),
    )
