"""Independent brute-force checks.

None of these routines share code with the analytic paths they are used to
verify: block positivity is tested by minimizing over product states instead
of solving the secular equation, the max radius by a dense sphere grid with
local ascent, determinants by permutation expansion, and eigenvalues by
characteristic-polynomial roots.
"""
import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .pauli import bloch_ket, expectation, pauli_coefficients

TOL_CLASS = 1e-9

_AXES = np.array([[1.0, 0, 0], [-1.0, 0, 0], [0, 1.0, 0],
                  [0, -1.0, 0], [0, 0, 1.0], [0, 0, -1.0]])


@dataclass(frozen=True, eq=False)
class ProductStateResult:
    min_value: float
    phi: np.ndarray
    nu: np.ndarray

    def ket(self):
        return np.kron(bloch_ket(self.phi), bloch_ket(self.nu))


def min_product_expectation(B, n_starts=64, seed=0):
    """Minimum of <phi nu|B|phi nu> over product states by alternating descent.

    Each half-step is the exact minimizer of a linear function on the sphere:
    phi = -normalize(a + T nu), then nu = -normalize(b + T^T phi).  Starts are
    the six coordinate axes plus ``n_starts`` random directions for nu.
    """
    tr, p = pauli_coefficients(B)
    rng = np.random.default_rng(seed)
    starts = np.vstack([_AXES, rng.normal(size=(n_starts, 3))])
    val, phi, nu = kernels.alternating_product_min(p.a, p.b, np.ascontiguousarray(p.T),
                                                   starts, 2000, 1e-16)
    return ProductStateResult(float(val) + 0.25 * (tr - 1.0), phi, nu)


def fibonacci_sphere(n):
    k = np.arange(n) + 0.5
    z = 1 - 2 * k / n
    rho = np.sqrt(1 - z * z)
    theta = np.pi * (3 - np.sqrt(5)) * k
    return np.column_stack([rho * np.cos(theta), rho * np.sin(theta), z])


def brute_max_radius(E, n_grid=10_000, refine_steps=2000, n_refine=8):
    """Grid search of |c + T_tilde nu| over the sphere, then monotone local ascent.

    Always a lower bound on the true maximum.
    """
    if E.singular_b:
        raise ValueError("point ellipsoid has no surface to search")
    c = np.ascontiguousarray(E.c, dtype=float)
    Tt = np.ascontiguousarray(E.T_tilde, dtype=float)
    pts = fibonacci_sphere(n_grid)
    vals = kernels.grid_radius_sq(c, Tt, pts)
    best = float(np.sqrt(vals.max()))
    for k in np.argsort(vals)[::-1][:n_refine]:
        rad, _ = kernels.ascend_radius(c, Tt, pts[k].copy(), refine_steps, 1e-16)
        best = max(best, float(rad))
    return best


def verify_block_positive(B, tol=TOL_CLASS, n_starts=64, seed=0):
    return min_product_expectation(B, n_starts, seed).min_value >= -tol


def product_state_value(B, phi, nu):
    """Direct 4x4 evaluation of <phi nu|B|phi nu>."""
    return expectation(np.asarray(B), np.kron(bloch_ket(phi), bloch_ket(nu)))


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(M):
    """Determinant as the signed sum over all permutations."""
    M = np.asarray(M)
    n = M.shape[0]
    total = 0
    for perm in itertools.permutations(range(n)):
        term = _perm_sign(perm)
        for i, j in enumerate(perm):
            term = term * M[i, j]
        total += term
    return total


def charpoly(M):
    """Characteristic polynomial coefficients (highest degree first), Faddeev-LeVerrier."""
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    coeffs = [1.0 + 0j]
    Mk = np.zeros_like(M)
    for k in range(1, n + 1):
        Mk = M @ (Mk + coeffs[-1] * np.eye(n))
        coeffs.append(-np.trace(Mk) / k)
    return np.array(coeffs)


def charpoly_eigenvalues(M):
    """Sorted real eigenvalues of a Hermitian matrix from its characteristic polynomial."""
    roots = np.roots(charpoly(M))
    return np.sort(roots.real)
