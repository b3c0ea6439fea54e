"""Seeded random two-qubit operators."""
import numpy as np

from . import kernels
from .pauli import I2, SIGMA, PauliForm, partial_transpose_B, reconstruct


def haar_ket(rng, dim=4):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def haar_kets(rng, n, dim=4):
    v = rng.normal(size=(n, dim)) + 1j * rng.normal(size=(n, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_state(rng, rank=None):
    """Density matrix from a Ginibre matrix of the given rank (random rank if None)."""
    rank = int(rng.integers(1, 5)) if rank is None else rank
    G = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def random_unit_vector(rng, dim=3):
    v = rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_canonical_form(rng, radius):
    """Canonical (c, T_tilde) whose ellipsoid has max radius ``radius``.

    Mixes full-rank, rank-2, rank-1 and rotation (whole-sphere) shapes, and
    occasionally forces the hard case of the max-radius problem.
    """
    kind = rng.integers(0, 6)
    if kind == 0:
        U, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        Tt = U * rng.choice([-1.0, 1.0])
        c = np.zeros(3)
    else:
        Tt = rng.normal(size=(3, 3))
        if kind == 1:
            Tt[:, rng.integers(0, 3)] = 0.0
        elif kind == 2:
            Tt = np.outer(rng.normal(size=3), rng.normal(size=3))
        c = random_unit_vector(rng) * rng.uniform(0.0, 1.0) * np.linalg.norm(Tt, 2)
        if kind == 3:
            # make T_tilde^T c orthogonal to the top right-singular vector
            Uc, s, _ = np.linalg.svd(Tt)
            c = rng.normal() * Uc[:, 1] * s[1] * 0.3 + rng.normal() * Uc[:, 2] * s[2] * 0.3
    m, _ = kernels.secular_max_radius(c, Tt, 200)
    scale = radius / m if m > 0 else 1.0
    return c * scale, Tt * scale


def bob_filter(R, b):
    """(1 x N) R (1 x N) with N = sqrt(1 + b.sigma); maps canonical R to one with Bob vector b."""
    bs = np.einsum("k,kij->ij", b, SIGMA)
    w, V = np.linalg.eigh(I2 + bs)
    N = (V * np.sqrt(w)) @ V.conj().T
    K = np.kron(I2, N)
    out = K @ R @ K
    return 0.5 * (out + out.conj().T)


def random_operator_with_radius(rng, radius, b_max=0.9):
    """Unit-trace operator whose ellipsoid has max radius ``radius`` and |b| <= b_max."""
    c, Tt = random_canonical_form(rng, radius)
    Rt = reconstruct(PauliForm(c, np.zeros(3), Tt))
    b = random_unit_vector(rng) * rng.uniform(0.0, b_max)
    return bob_filter(Rt, b)


def random_block_positive(rng):
    """Block-positive operator drawn from a mix of states, their partial transposes
    and filtered canonical operators spanning Classes A-D."""
    kind = rng.integers(0, 4)
    # full rank, so det B = 0 only on genuine class boundaries
    if kind == 0:
        return random_state(rng, rank=4)
    if kind == 1:
        return partial_transpose_B(random_state(rng, rank=4))
    return random_operator_with_radius(rng, rng.uniform(0.2, 1.0) ** 0.25)


def random_hermitian_unit_trace(rng, b_max=0.9):
    """Operator that may or may not be block positive (max radius spans 0.3-1.7)."""
    if rng.random() < 0.2:
        while True:
            H = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            H = H + H.conj().T + rng.uniform(0.0, 6.0) * np.eye(4)
            tr = np.trace(H).real
            if abs(tr) < 1e-3:
                continue
            H = H / tr
            b = np.einsum("kij,ji->k", np.stack([np.kron(I2, s) for s in SIGMA]), H).real
            if np.linalg.norm(b) <= b_max:
                return 0.5 * (H + H.conj().T)
    return random_operator_with_radius(rng, rng.uniform(0.3, 1.7), b_max)
