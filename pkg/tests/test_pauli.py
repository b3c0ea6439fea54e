import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from steerwit.errors import NotHermitian, NotUnitTrace
from steerwit.oracle import charpoly_eigenvalues, leibniz_det
from steerwit.pauli import (SIGMA, PauliForm, decompose, det4, eigenvalues4, normalize,
                            partial_trace_A, partial_transpose_B, reconstruct)
from steerwit.witness import PHI_PLUS, flip_witness, projector, wp_witness

from conftest import qubit_state, random_bloch, random_hermitian_unit_trace

MIXED = np.eye(4) / 4


def pauli_trace_oracle(R):
    """Coefficients by explicit loops over 2x2 blocks, not via the kron tables."""
    basis = [np.eye(2)] + list(SIGMA)
    coef = np.zeros((4, 4))
    for m in range(4):
        for n in range(4):
            s = 0
            for i in range(2):
                for j in range(2):
                    for k in range(2):
                        for l in range(2):
                            s += R[2 * i + j, 2 * k + l] * basis[m][k, i] * basis[n][l, j]
            coef[m, n] = s.real
    return coef[1:, 0], coef[0, 1:], coef[1:, 1:]


def pt_oracle(R):
    out = np.zeros_like(R)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    out[2 * i + j, 2 * k + l] = R[2 * i + l, 2 * k + j]
    return out


finite = st.floats(-1.5, 1.5, allow_nan=False)


def test_decompose_maximally_mixed():
    p = decompose(MIXED)
    assert np.allclose(p.a, 0) and np.allclose(p.b, 0) and np.allclose(p.T, 0)


def test_decompose_flip():
    p = decompose(flip_witness())
    assert np.allclose(p.a, 0) and np.allclose(p.b, 0)
    assert np.allclose(p.T, np.eye(3), atol=1e-15)


@pytest.mark.parametrize("p", [0.0, 0.2, 0.5, 1.0, 1.1])
def test_decompose_wp(p):
    q = decompose(wp_witness(p))
    assert np.allclose(q.T, np.diag([1, 1, 2 * p - 1]), atol=1e-15)
    assert np.allclose(q.a, 0) and np.allclose(q.b, 0)


def test_decompose_phi_plus_matches_loop_oracle():
    R = projector(PHI_PLUS)
    a, b, T = pauli_trace_oracle(R)
    assert np.allclose(T, np.diag([1, -1, 1]))
    p = decompose(R)
    assert np.allclose(p.T, T, atol=1e-15)
    assert np.allclose(p.a, a) and np.allclose(p.b, b)


def test_decompose_random_matches_loop_oracle(rng):
    for _ in range(20):
        R = random_hermitian_unit_trace(rng)
        a, b, T = pauli_trace_oracle(R)
        p = decompose(R)
        assert np.allclose(p.a, a, atol=1e-12)
        assert np.allclose(p.b, b, atol=1e-12)
        assert np.allclose(p.T, T, atol=1e-12)


def test_decompose_rejects_bad_input():
    R = MIXED.astype(complex)
    R[0, 1] = 1e-6
    with pytest.raises(NotHermitian):
        decompose(R)
    with pytest.raises(NotUnitTrace):
        decompose(2 * MIXED)
    assert np.allclose(decompose(normalize(2 * MIXED)).T, 0)


def test_reconstruct_examples():
    assert np.allclose(reconstruct(PauliForm.zero()), MIXED)
    flip = reconstruct(PauliForm(np.zeros(3), np.zeros(3), np.eye(3)))
    assert np.allclose(flip, flip_witness(), atol=1e-15)


def test_round_trip_10k(rng):
    worst = 0.0
    for _ in range(10_000):
        p = PauliForm(rng.normal(size=3), rng.normal(size=3), rng.normal(size=(3, 3)))
        q = decompose(reconstruct(p))
        worst = max(worst, np.max(np.abs(q.T - p.T)), np.max(np.abs(q.a - p.a)),
                    np.max(np.abs(q.b - p.b)))
    assert worst <= 1e-9


@settings(max_examples=300, deadline=None)
@given(a=arrays(float, 3, elements=finite), b=arrays(float, 3, elements=finite),
       T=arrays(float, (3, 3), elements=finite))
def test_reconstruct_decompose_identity(a, b, T):
    R = reconstruct(PauliForm(a, b, T))
    assert abs(np.trace(R) - 1) < 1e-12
    assert np.allclose(reconstruct(decompose(R)), R, atol=1e-9, rtol=0)


def test_partial_transpose():
    assert np.allclose(partial_transpose_B(MIXED), MIXED)
    assert np.allclose(partial_transpose_B(projector(PHI_PLUS)), flip_witness())
    M = np.arange(16).reshape(4, 4)
    assert np.array_equal(partial_transpose_B(M), pt_oracle(M))
    assert np.array_equal(partial_transpose_B(partial_transpose_B(M)), M)


def test_partial_transpose_flips_sigma_y(rng):
    for _ in range(100):
        R = random_hermitian_unit_trace(rng)
        p, q = decompose(R), decompose(partial_transpose_B(R))
        flip = np.array([1, -1, 1])
        assert np.allclose(q.T, p.T * flip[None, :], atol=1e-12)
        assert np.allclose(q.b, p.b * flip, atol=1e-12)
        assert np.allclose(q.a, p.a, atol=1e-12)
        PT = partial_transpose_B(R)
        assert np.allclose(PT, PT.conj().T)
        assert abs(np.trace(PT) - 1) < 1e-12


def test_partial_trace(rng):
    assert np.allclose(partial_trace_A(MIXED), np.eye(2) / 2)
    assert np.allclose(partial_trace_A(flip_witness()), np.eye(2) / 2)
    for _ in range(20):
        ra, rb = qubit_state(random_bloch(rng)), qubit_state(random_bloch(rng))
        assert np.allclose(partial_trace_A(np.kron(ra, rb)), rb)
        R = random_hermitian_unit_trace(rng)
        RB = partial_trace_A(R)
        b = np.array([np.trace(RB @ s).real for s in SIGMA])
        assert np.allclose(b, decompose(R).b)
        assert np.isclose(np.trace(RB), np.trace(R))


def test_det4_examples():
    assert det4(MIXED) == pytest.approx(1 / 256, abs=1e-18)
    assert det4(flip_witness()) == pytest.approx(-1 / 16, abs=1e-15)
    assert leibniz_det(flip_witness()).real == pytest.approx(-1 / 16, abs=1e-15)
    assert det4(projector(PHI_PLUS)) == pytest.approx(0, abs=1e-15)


def test_det4_matches_leibniz(rng):
    for _ in range(50):
        R = random_hermitian_unit_trace(rng)
        assert det4(R) == pytest.approx(leibniz_det(R).real, rel=1e-9, abs=1e-14)


def test_eigenvalues4_examples():
    assert np.allclose(eigenvalues4(MIXED), [0.25] * 4)
    assert np.allclose(eigenvalues4(flip_witness()), [-0.5, 0.5, 0.5, 0.5], atol=1e-14)
    assert np.allclose(charpoly_eigenvalues(flip_witness()), [-0.5, 0.5, 0.5, 0.5], atol=1e-7)


def test_eigenvalues4_against_charpoly_oracle(rng):
    for _ in range(200):
        R = random_hermitian_unit_trace(rng)
        w = eigenvalues4(R)
        assert np.all(np.diff(w) >= 0)
        assert np.allclose(w, charpoly_eigenvalues(R), atol=1e-8)
        assert abs(w.sum() - np.trace(R).real) <= 1e-9
        assert det4(R) == pytest.approx(np.prod(w), rel=1e-9, abs=1e-14)
