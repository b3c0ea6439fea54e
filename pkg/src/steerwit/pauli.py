"""Two-qubit operator algebra in the Pauli basis.

Operators are plain 4x4 complex numpy arrays in the basis
|00>, |01>, |10>, |11> with qubit A as the first tensor factor.  The Pauli
convention is fixed as sigma_y = [[0, -i], [i, 0]]; partial transposition and
the sign of the chirality both depend on it.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NoConvergence, NotHermitian, NotUnitTrace

TOL_HERM = 1e-10
TOL_TRACE = 1e-10
TOL_RECON = 1e-9
TOL_EIG = 1e-9

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA = np.stack([SX, SY, SZ])

# SIGMA_A[i] = sigma_i (x) 1, SIGMA_B[j] = 1 (x) sigma_j, SIGMA_AB[i, j] = sigma_i (x) sigma_j
SIGMA_A = np.stack([np.kron(s, I2) for s in SIGMA])
SIGMA_B = np.stack([np.kron(I2, s) for s in SIGMA])
SIGMA_AB = np.stack([[np.kron(s, t) for t in SIGMA] for s in SIGMA])


@dataclass(frozen=True, eq=False)
class PauliForm:
    """Coefficients of R = (1 + a.sigma x 1 + 1 x b.sigma + sum T_ij sigma_i x sigma_j) / 4."""

    a: np.ndarray
    b: np.ndarray
    T: np.ndarray

    @classmethod
    def zero(cls):
        return cls(np.zeros(3), np.zeros(3), np.zeros((3, 3)))

    def allclose(self, other, atol=TOL_RECON):
        return (np.allclose(self.a, other.a, atol=atol, rtol=0)
                and np.allclose(self.b, other.b, atol=atol, rtol=0)
                and np.allclose(self.T, other.T, atol=atol, rtol=0))

    def to_dict(self):
        return {"a": self.a.tolist(), "b": self.b.tolist(), "T": self.T.tolist()}


def hermiticity_residual(R):
    R = np.asarray(R)
    return float(np.max(np.abs(R - R.conj().T)))


def check_operator(R, require_unit_trace=True):
    """Validate a two-qubit operator and return it as a complex 4x4 array."""
    R = np.asarray(R, dtype=complex)
    if R.shape != (4, 4):
        raise ValueError(f"expected a 4x4 operator, got shape {R.shape}")
    if not np.all(np.isfinite(R)):
        raise ValueError("operator has non-finite entries")
    res = hermiticity_residual(R)
    if res > TOL_HERM:
        raise NotHermitian(f"hermiticity residual {res:.3e} exceeds {TOL_HERM:.0e}")
    if require_unit_trace:
        tr = np.trace(R)
        if abs(tr - 1) > TOL_TRACE:
            raise NotUnitTrace(f"trace {tr.real:.12g} differs from 1")
    return R


def normalize(R):
    """Divide a Hermitian operator by its trace."""
    R = np.asarray(R, dtype=complex)
    tr = np.trace(R).real
    if abs(tr) < 1e-300:
        raise NotUnitTrace("operator is traceless and cannot be normalized")
    return R / tr


def pauli_coefficients(R):
    """(tr R, PauliForm) for any Hermitian R, without the unit-trace check."""
    R = check_operator(R, require_unit_trace=False)
    a = np.einsum("kij,ji->k", SIGMA_A, R)
    b = np.einsum("kij,ji->k", SIGMA_B, R)
    T = np.einsum("klij,ji->kl", SIGMA_AB, R)
    return float(np.trace(R).real), PauliForm(a.real.copy(), b.real.copy(), T.real.copy())


def decompose(R):
    R = check_operator(R)
    return pauli_coefficients(R)[1]


def reconstruct(p):
    a = np.asarray(p.a, dtype=float)
    b = np.asarray(p.b, dtype=float)
    T = np.asarray(p.T, dtype=float)
    R = (np.eye(4, dtype=complex)
         + np.einsum("k,kij->ij", a, SIGMA_A)
         + np.einsum("k,kij->ij", b, SIGMA_B)
         + np.einsum("kl,klij->ij", T, SIGMA_AB))
    return R / 4


def partial_transpose_B(R):
    R = np.asarray(R)
    return R.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def partial_trace_A(R):
    R = np.asarray(R)
    return np.einsum("ijil->jl", R.reshape(2, 2, 2, 2))


def det4(R):
    """Real determinant of a Hermitian 4x4 operator."""
    R = np.asarray(R, dtype=complex)
    return float(kernels.lu_det(R).real)


def eigh4(R, max_sweeps=100):
    R = np.asarray(R, dtype=complex)
    w, V, ok = kernels.jacobi_eigh(R, max_sweeps)
    if not ok:
        raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return w, V


def eigenvalues4(R, max_sweeps=100):
    """Ascending eigenvalues of a Hermitian operator (cyclic Jacobi)."""
    return eigh4(R, max_sweeps)[0]


def expectation(R, psi):
    psi = np.asarray(psi, dtype=complex)
    return float(np.real(np.vdot(psi, R @ psi)))


def product_expectation(p, phi, nu):
    """<phi nu| R |phi nu> from Bloch vectors, using the Pauli coefficients of R."""
    return 0.25 * (1.0 + p.a @ phi + p.b @ nu + phi @ p.T @ nu)


def bloch_ket(n):
    """Pure qubit ket with Bloch vector n."""
    x, y, z = np.asarray(n, dtype=float) / np.linalg.norm(n)
    theta = np.arccos(np.clip(z, -1.0, 1.0))
    phase = np.arctan2(y, x)
    return np.array([np.cos(theta / 2), np.exp(1j * phase) * np.sin(theta / 2)])


def ket_bloch(k):
    k = np.asarray(k, dtype=complex)
    k = k / np.linalg.norm(k)
    return np.real(np.einsum("i,kij,j->k", k.conj(), SIGMA, k))
