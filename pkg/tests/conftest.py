import sys

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_hermitian_unit_trace(rng):
    H = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    H = H + H.conj().T
    return H + (1 - np.trace(H).real) / 4 * np.eye(4)


def qubit_state(v):
    """Single-qubit density matrix with Bloch vector v (|v| <= 1)."""
    x, y, z = v
    return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]])


def random_bloch(rng, max_len=1.0):
    v = rng.normal(size=3)
    return v * rng.uniform(0, max_len) / np.linalg.norm(v)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
