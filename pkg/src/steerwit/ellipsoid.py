"""Ellipsoid representation of a two-qubit operator.

For a unit-trace Hermitian R with Pauli coefficients (a, b, T) the ellipsoid
has centre ``c = g^2 (a - T b)`` and matrix
``Q = g^2 (T - a b^T)(1 + g^2 b b^T)(T^T - b a^T)`` where ``g^2 = 1/(1 - |b|^2)``.
After local filtering on Bob's side the operator takes the canonical form
(c, 0, T_tilde) and the ellipsoid surface is ``{c + T_tilde nu : |nu| = 1}``.
"""
import enum
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateFrame, InconsistentInvariants, SingularMarginal
from .pauli import (I2, PauliForm, check_operator, decompose, partial_trace_A,
                    reconstruct)

TOL_GEOM = 1e-9
TOL_SING = 1e-8
TOL_CHI = 1e-9
TOL_CONTACT = 1e-8


class Containment(enum.Enum):
    INSIDE = "inside"
    TOUCHING = "touching"
    OUTSIDE = "outside"


@dataclass(frozen=True, eq=False)
class EllipsoidRep:
    c: np.ndarray
    Q: np.ndarray
    T_tilde: np.ndarray
    chi: int
    det_T_tilde: float
    degenerate: bool
    singular_b: bool
    gamma_b: float
    # |b| > 1: Bob's marginal is indefinite, so R cannot be block positive
    indefinite_b: bool = False

    @property
    def c_norm(self):
        return float(np.linalg.norm(self.c))

    def flipped(self):
        """Same surface with opposite chirality (what partial transposition does)."""
        flip = np.diag([1.0, -1.0, 1.0])
        return EllipsoidRep(self.c.copy(), self.Q.copy(), self.T_tilde @ flip,
                            -self.chi, -self.det_T_tilde, self.degenerate,
                            self.singular_b, self.gamma_b, self.indefinite_b)

    @classmethod
    def from_canonical(cls, c, T_tilde):
        """Ellipsoid of the canonical operator (c, b=0, T_tilde)."""
        c = np.asarray(c, dtype=float)
        T_tilde = np.asarray(T_tilde, dtype=float)
        det = float(np.linalg.det(T_tilde))
        chi = 0 if abs(det) <= TOL_CHI else int(np.sign(det))
        return cls(c.copy(), _clip_psd(T_tilde @ T_tilde.T), T_tilde.copy(), chi,
                   det, chi == 0, False, 1.0)


def _clip_psd(Q):
    Q = 0.5 * (Q + Q.T)
    w, V = np.linalg.eigh(Q)
    floor = -TOL_GEOM * max(1.0, float(np.max(np.abs(w))))
    if w[0] < floor:
        raise InconsistentInvariants(f"ellipsoid matrix has eigenvalue {w[0]:.3e} < 0")
    if w[0] < 0:
        Q = (V * np.clip(w, 0.0, None)) @ V.T
    return Q


def canonical_filter(R):
    """Apply (1 x (2 R_B)^(-1/2)) R (1 x (2 R_B)^(-1/2))."""
    R = check_operator(R)
    RB = partial_trace_A(R)
    w, V = np.linalg.eigh(0.5 * (RB + RB.conj().T))
    if 2 * w[0] <= TOL_SING:
        raise SingularMarginal(
            f"reduced operator on B has eigenvalue {w[0]:.3e}; canonical form does not exist")
    M = (V * (2 * w) ** -0.5) @ V.conj().T
    K = np.kron(I2, M)
    Rt = K @ R @ K
    return 0.5 * (Rt + Rt.conj().T)


def ellipsoid_of(R):
    R = check_operator(R)
    p = decompose(R)
    bn = float(np.linalg.norm(p.b))
    if bn >= 1 - TOL_SING:
        # Footnote case: the ellipsoid collapses to the point a.
        return EllipsoidRep(p.a.copy(), np.zeros((3, 3)), np.zeros((3, 3)), 0, 0.0,
                            True, True, np.inf, indefinite_b=bn > 1 + TOL_SING)
    g2 = 1.0 / (1.0 - bn * bn)
    a, b, T = p.a, p.b, p.T
    c = g2 * (a - T @ b)
    X = T - np.outer(a, b)
    Q = _clip_psd(g2 * X @ (np.eye(3) + g2 * np.outer(b, b)) @ X.T)
    T_tilde = decompose(canonical_filter(R)).T
    det = float(np.linalg.det(T_tilde))
    chi = 0 if abs(det) <= TOL_CHI else int(np.sign(det))
    return EllipsoidRep(c, Q, T_tilde, chi, det, chi == 0, False, float(np.sqrt(g2)))


def canonical_operator(E):
    """Unit-trace operator in canonical form whose ellipsoid is E."""
    if E.singular_b:
        raise DegenerateFrame("a point ellipsoid has no canonical operator")
    return reconstruct(PauliForm(E.c, np.zeros(3), E.T_tilde))


def surface_point(E, nu):
    if E.singular_b:
        raise DegenerateFrame("ellipsoid is the single point c = a")
    nu = np.asarray(nu, dtype=float)
    if abs(np.linalg.norm(nu) - 1) > TOL_GEOM:
        raise ValueError("nu must be a unit vector")
    return E.c + E.T_tilde @ nu


def semiaxes(E):
    """Semiaxis lengths (descending) and the matching unit directions as columns."""
    w, V = np.linalg.eigh(E.Q)
    order = np.argsort(w)[::-1]
    return np.sqrt(np.clip(w[order], 0.0, None)), V[:, order]


def max_radius_point(E):
    """(max |c + T_tilde nu| over unit nu, maximizing nu)."""
    if E.indefinite_b:
        return np.inf, np.full(3, np.nan)
    if E.singular_b:
        return E.c_norm, np.full(3, np.nan)
    rad, nu = kernels.secular_max_radius(np.ascontiguousarray(E.c, dtype=float),
                                         np.ascontiguousarray(E.T_tilde, dtype=float), 200)
    return float(rad), nu


def max_radius(E):
    return max_radius_point(E)[0]


def is_inside_bloch_sphere(E, tol=TOL_CONTACT):
    rad = max_radius(E)
    if abs(rad - 1) <= tol:
        return Containment.TOUCHING
    if rad < 1:
        return Containment.INSIDE
    return Containment.OUTSIDE
