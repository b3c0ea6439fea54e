"""Classes A-D for block-positive two-qubit operators.

Two independent routes:

* determinants: signs of det B and det B^{T_B};
* geometry: signs of ``c^4 - 2 u c^2 + q -/+ chi r`` computed from the
  ellipsoid centre, matrix and chirality.

In the canonical frame ``det B~ = (c^4 - 2uc^2 + q - chi r) / 256`` and the
same with ``+chi r`` for the partial transpose, so the routes must agree.
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from .ellipsoid import Containment, ellipsoid_of, is_inside_bloch_sphere, max_radius
from .errors import InconsistentInvariants
from .pauli import check_operator, det4, partial_transpose_B

TOL_CLASS = 1e-9
# Signs are read against a rounding-noise floor; TOL_CLASS only flags marginal cases.
# det4 of a unit-trace operator is accurate to ~1e-16, and lhs = 256 det of the canonical form.
TOL_SIGN = 1e-12
TOL_SIGN_LHS = 256 * TOL_SIGN


class OperatorClass(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    NOT_BLOCK_POSITIVE = "NotBlockPositive"

    def describe(self):
        return _DESCRIPTIONS[self]


_DESCRIPTIONS = {
    OperatorClass.A: "separable state (partial transpose also a separable state)",
    OperatorClass.B: "entangled state (partial transpose is a witness)",
    OperatorClass.C: "entanglement witness (partial transpose is an entangled state)",
    OperatorClass.D: "entanglement witness (partial transpose also a witness)",
    OperatorClass.NOT_BLOCK_POSITIVE: "not block positive",
}

_BY_SIGNS = {
    (True, True): OperatorClass.A,
    (True, False): OperatorClass.B,
    (False, True): OperatorClass.C,
    (False, False): OperatorClass.D,
}


@dataclass(frozen=True)
class ClassLabel:
    cls: OperatorClass
    marginal: bool = False
    deciding: dict = field(default_factory=dict)

    @property
    def is_state(self):
        return self.cls in (OperatorClass.A, OperatorClass.B)

    @property
    def is_witness(self):
        return self.cls in (OperatorClass.C, OperatorClass.D)

    def __str__(self):
        if self.cls is OperatorClass.NOT_BLOCK_POSITIVE:
            return "NotBlockPositive"
        return f"Class {self.cls.value}"


@dataclass(frozen=True, eq=False)
class ClassInvariants:
    c_norm: float
    c_hat: np.ndarray | None
    gamma_b: float
    chi: int
    u: float
    q: float
    r: float
    lhs_minus: float
    lhs_plus: float
    det_B: float
    det_B_TB: float


def _geometric_terms(E):
    Q = E.Q
    cn = E.c_norm
    trQ = float(np.trace(Q))
    skew = 0.0 if cn == 0 else float(E.c @ Q @ E.c) / cn**2
    u = 1 - trQ + 2 * skew
    q = 1 + 2 * float(np.trace(Q @ Q)) - 2 * trQ - trQ**2
    # r vanishes exactly when the chirality does
    r = 0.0 if E.chi == 0 else 8 * float(np.sqrt(max(np.linalg.det(Q), 0.0)))
    base = cn**4 - 2 * u * cn**2 + q
    return u, q, r, base


def compute_invariants(E, B):
    B = check_operator(B)
    u, q, r, base = _geometric_terms(E)
    cn = E.c_norm
    return ClassInvariants(
        c_norm=cn,
        c_hat=None if cn == 0 else E.c / cn,
        gamma_b=E.gamma_b,
        chi=E.chi,
        u=u, q=q, r=r,
        lhs_minus=base - E.chi * r,
        lhs_plus=base + E.chi * r,
        det_B=det4(B),
        det_B_TB=det4(partial_transpose_B(B)),
    )


def classify_by_determinants(B, tol=TOL_CLASS, E=None):
    B = check_operator(B)
    E = ellipsoid_of(B) if E is None else E
    if is_inside_bloch_sphere(E) is Containment.OUTSIDE:
        return ClassLabel(OperatorClass.NOT_BLOCK_POSITIVE, False,
                          {"max_radius": max_radius(E)})
    d = det4(B)
    dt = det4(partial_transpose_B(B))
    marginal = abs(d) <= tol or abs(dt) <= tol
    return ClassLabel(_BY_SIGNS[(d >= -TOL_SIGN, dt >= -TOL_SIGN)], marginal,
                      {"det_B": d, "det_B_TB": dt})


def classify_by_ellipsoid(E, tol=TOL_CLASS):
    if is_inside_bloch_sphere(E) is Containment.OUTSIDE:
        return ClassLabel(OperatorClass.NOT_BLOCK_POSITIVE, False,
                          {"max_radius": max_radius(E)})
    _, _, r, base = _geometric_terms(E)
    lhs_a = base - r
    lhs_d = base + r
    lm = base - E.chi * r
    lp = base + E.chi * r
    deciding = {"lhs_A": lhs_a, "lhs_D": lhs_d, "lhs_minus": lm, "lhs_plus": lp}
    marginal = min(abs(lhs_a), abs(lhs_d)) <= tol
    eps = TOL_SIGN_LHS
    if lhs_a >= -eps:
        cls = OperatorClass.A
    elif lhs_d < -eps:
        cls = OperatorClass.D
    elif lm >= -eps and lp < -eps:
        cls = OperatorClass.B
    elif lm < -eps and lp >= -eps:
        cls = OperatorClass.C
    else:
        raise InconsistentInvariants(f"no class matches sign pattern {deciding}")
    return ClassLabel(cls, marginal, deciding)


def classify(B, tol=TOL_CLASS):
    """Determinant-route class of B."""
    return classify_by_determinants(B, tol)
