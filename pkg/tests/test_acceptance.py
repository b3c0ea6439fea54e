"""Acceptance criteria 1-10.

Each test records a one-line PASS/FAIL verdict; conftest prints them in the
pytest summary.  Run ``python tests/test_acceptance.py`` to print them directly.
"""
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from steerwit.classification import (OperatorClass, classify, classify_by_determinants,
                                     classify_by_ellipsoid, compute_invariants)
from steerwit.ellipsoid import (Containment, EllipsoidRep, canonical_filter, ellipsoid_of,
                                is_inside_bloch_sphere, max_radius, semiaxes)
from steerwit.oracle import brute_max_radius, leibniz_det, verify_block_positive
from steerwit.pauli import det4, eigenvalues4, partial_transpose_B
from steerwit.sampling import (haar_ket, random_block_positive, random_canonical_form,
                               random_hermitian_unit_trace)
from steerwit.witness import (PHI_PLUS, analyze_witness, conjecture_explore, ew4_optimal,
                              flip_witness, pure_state_witness, werner, wp_witness)

GOLDEN = Path(__file__).parent / "golden"
SEED = 20240917
N_OPS = 10_000

RESULTS = {}
# every operator analyze_witness reported as a witness, for criterion 8
WITNESSES = []


def record(n, ok, detail):
    RESULTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def witness_props(B):
    props = analyze_witness(B)
    if props.is_witness:
        WITNESSES.append(B)
    return props


def sign(x, tol=1e-9):
    return 0 if abs(x) <= tol else int(np.sign(x))


@pytest.fixture(scope="module")
def block_positive_samples():
    rng = np.random.default_rng(SEED + 3)
    return [random_block_positive(rng) for _ in range(N_OPS)]


def test_criterion_01_reference_operators():
    bad = []
    F = flip_witness()
    E = ellipsoid_of(F)
    props = witness_props(F)
    if not (props.class_label.cls is OperatorClass.C and props.optimal and E.chi == 1
            and np.allclose(E.c, 0, atol=1e-9) and np.allclose(E.Q, np.eye(3), atol=1e-9)):
        bad.append("flip")
    for p in (-0.1, 0.0, 0.2, 0.5, 0.999, 1.0, 1.1):
        W = wp_witness(p)
        props = witness_props(W)
        cls = props.class_label.cls
        bp = cls is not OperatorClass.NOT_BLOCK_POSITIVE
        ok = bp == (0 <= p <= 1) and props.is_witness == (0 < p <= 1)
        if 0 < p < 1:
            ok &= cls is OperatorClass.D
        if p == 1:
            ok &= cls is OperatorClass.C and props.optimal
        lengths, _ = semiaxes(ellipsoid_of(W))
        ok &= np.allclose(np.sort(lengths), np.sort([1, 1, abs(2 * p - 1)]), atol=1e-9, rtol=0)
        if not ok:
            bad.append(f"W_{p}")
    W = ew4_optimal(PHI_PLUS)
    E = ellipsoid_of(W)
    props = witness_props(W)
    # Q = diag(1, 0, 1) up to a rotation in the xz plane: y row zero and xz block the identity
    disc = (np.allclose(E.Q[1], 0, atol=1e-9) and np.allclose(E.Q[np.ix_([0, 2], [0, 2])],
                                                              np.eye(2), atol=1e-9))
    if not (np.allclose(W, W.T) and np.allclose(W, partial_transpose_B(W)) and disc
            and np.allclose(E.c, 0, atol=1e-9) and props.weakly_optimal):
        bad.append("ew4opt")
    record(1, not bad, "flip, W_p sweep, ew4opt" + (f"; failed: {bad}" if bad else ""))


def test_criterion_02_block_positivity_equivalence():
    rng = np.random.default_rng(SEED + 2)
    disagree = excluded = n_bp = 0
    for _ in range(N_OPS):
        R = random_hermitian_unit_trace(rng)
        E = ellipsoid_of(R)
        rad = max_radius(E)
        if abs(rad - 1) < 1e-6:
            excluded += 1
            continue
        geo = is_inside_bloch_sphere(E) is not Containment.OUTSIDE
        brute = verify_block_positive(R)
        n_bp += brute
        disagree += geo != brute
    record(2, disagree == 0 and 0 < n_bp < N_OPS - excluded,
           f"{N_OPS} operators, {n_bp} block positive, {excluded} excluded, "
           f"{disagree} disagreements")


def test_criterion_03_route_agreement(block_positive_samples):
    disagree = marginal = sign_fail = 0
    counts = {}
    for R in block_positive_samples:
        E = ellipsoid_of(R)
        by_det = classify_by_determinants(R, E=E)
        by_geo = classify_by_ellipsoid(E)
        inv = compute_invariants(E, R)
        Rt = canonical_filter(R)
        if sign(inv.lhs_minus) != sign(256 * leibniz_det(Rt).real):
            sign_fail += 1
        if sign(inv.lhs_plus) != sign(256 * leibniz_det(partial_transpose_B(Rt)).real):
            sign_fail += 1
        if by_det.marginal or by_geo.marginal:
            marginal += 1
            continue
        counts[by_det.cls.value] = counts.get(by_det.cls.value, 0) + 1
        disagree += by_det.cls is not by_geo.cls
    record(3, disagree == 0 and sign_fail == 0 and len(counts) == 4,
           f"{N_OPS} operators {dict(sorted(counts.items()))}, {marginal} marginal, "
           f"{disagree} route disagreements, {sign_fail} lhs sign mismatches")


def test_criterion_04_chirality_laws(block_positive_samples):
    bad_b = bad_c = bad_pt = n_b = n_c = 0
    for R in block_positive_samples:
        E = ellipsoid_of(R)
        cls = classify(R).cls
        if cls is OperatorClass.B:
            n_b += 1
            bad_b += E.chi != -1
        elif cls is OperatorClass.C:
            n_c += 1
            bad_c += E.chi != 1
        F = ellipsoid_of(partial_transpose_B(R))
        if not (F.chi == -E.chi and np.allclose(F.c, E.c, atol=1e-9, rtol=0)
                and np.allclose(F.Q, E.Q, atol=1e-9, rtol=0)):
            bad_pt += 1
    record(4, bad_b == bad_c == bad_pt == 0 and n_b > 0 and n_c > 0,
           f"{n_b} Class B ({bad_b} not left-handed), {n_c} Class C ({bad_c} not "
           f"right-handed), {bad_pt} partial-transpose violations")


def test_criterion_05_werner_family():
    def is_a(w):
        return classify(werner(w)).cls is OperatorClass.A

    lo, hi = 0.0, 1.0
    assert is_a(lo) and not is_a(hi)
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if is_a(mid) else (lo, mid)
    # determinant oracle on either side of the transition
    oracle_ok = (leibniz_det(partial_transpose_B(werner(lo))).real >= -1e-12
                 and leibniz_det(partial_transpose_B(werner(hi + 1e-7))).real < 0)
    sphere_err = 0.0
    for w in np.linspace(0, 1, 101):
        E = ellipsoid_of(werner(w))
        # oracle: a = b = 0 and T = diag(w, -w, w) give c = 0, Q = w^2 1
        sphere_err = max(sphere_err, np.abs(E.c).max(), np.abs(E.Q - w**2 * np.eye(3)).max(),
                         abs(max_radius(E) - w))
    record(5, abs(hi - 1 / 3) <= 1e-6 and oracle_ok and sphere_err <= 1e-9,
           f"transition at w = {hi:.10f} (|w - 1/3| = {abs(hi - 1 / 3):.1e}), "
           f"sphere error {sphere_err:.1e}")


def test_criterion_06_geometry_solver():
    rng = np.random.default_rng(SEED + 6)
    worst = 0.0
    kinds = {"full": 0, "rank2": 0, "rank1": 0, "hard": 0}
    for i in range(1000):
        c, Tt = random_canonical_form(rng, rng.uniform(0.2, 1.6))
        if i % 10 == 0:
            # explicit hard case: T~^T c orthogonal to the top eigenvector of T~^T T~
            Tt = np.diag(np.sort(rng.uniform(0.05, 1.0, 3))[::-1])
            c = np.array([0.0, rng.normal(), rng.normal()]) * 0.2
            kinds["hard"] += 1
        else:
            rank = np.linalg.matrix_rank(Tt, tol=1e-9)
            kinds[{3: "full", 2: "rank2", 1: "rank1"}.get(rank, "full")] += 1
        E = EllipsoidRep.from_canonical(c, Tt)
        worst = max(worst, abs(max_radius(E) - brute_max_radius(E)))
    record(6, worst <= 1e-6 and all(kinds.values()),
           f"1000 ellipsoids {kinds}, worst |secular - brute| = {worst:.1e}")


def test_criterion_07_weak_optimality():
    worst = 0.0
    bad = []
    ket = np.kron([1, 1], [1, -1]) / 2
    for p in np.linspace(0.01, 1.0, 100):
        W = wp_witness(p)
        worst = max(worst, abs(np.vdot(ket, W @ ket)))
        if not witness_props(W).weakly_optimal:
            bad.append(f"W_{p:.2f}")
    rng = np.random.default_rng(SEED + 7)
    for _ in range(200):
        W = pure_state_witness(haar_ket(rng))
        if not witness_props(W).weakly_optimal:
            bad.append("pure")
    record(7, worst <= 1e-12 and not bad,
           f"max |<+-|W_p|+->| = {worst:.1e}, {len(bad)} not weakly optimal")


def test_criterion_08_witness_spectra(block_positive_samples):
    for R in block_positive_samples[:2000]:
        witness_props(R)
    bad = 0
    for W in WITNESSES:
        evs = eigenvalues4(W)
        bad += not (np.sum(evs < -1e-9) == 1 and det4(W) < 0)
    record(8, bad == 0 and len(WITNESSES) > 0,
           f"{len(WITNESSES)} reported witnesses, {bad} without exactly one negative eigenvalue")


def test_criterion_09_conjecture_smoke():
    E = EllipsoidRep.from_canonical(np.zeros(3), np.eye(3))
    first = json.dumps(conjecture_explore(E, seed=SEED, n_witnesses=1000))
    second = json.dumps(conjecture_explore(E, seed=SEED, n_witnesses=1000))
    rep = json.loads(first)
    given = rep["variants"][0]
    ok = (rep["n_witnesses_sampled"] == 1000 and E.chi == 1 and given["is_witness"]
          and given["counterexamples"] == [] and first == second)
    record(9, ok, f"{rep['n_witnesses_sampled']} members, "
                  f"{len(given['counterexamples'])} counterexamples, "
                  f"byte-identical rerun: {first == second}")


def test_criterion_10_cli_golden_and_mesh():
    cmd = [sys.executable, "-m", "steerwit"]
    mismatched = []
    for name in ("flip", "wp:0.2", "bell", "werner:0.5", "ew4opt"):
        doc = subprocess.run(cmd + ["examples", name], capture_output=True, text=True, check=True)
        out = subprocess.run(cmd + ["classify", "--json"], input=doc.stdout,
                             capture_output=True, text=True, check=True).stdout
        if out != (GOLDEN / f"classify_{name.replace(':', '_')}.json").read_text():
            mismatched.append(name)
    doc = subprocess.run(cmd + ["examples", "wp:0.2"], capture_output=True, text=True, check=True)
    mesh = json.loads(subprocess.run(cmd + ["mesh"], input=doc.stdout, capture_output=True,
                                     text=True, check=True).stdout)
    v = np.array(mesh["vertices"])
    norm_err = abs(np.linalg.norm(v, axis=1).max() - 1)
    min_axis = min(mesh["meta"]["semiaxes"])
    record(10, not mismatched and norm_err <= 1e-9 and abs(min_axis - 0.6) <= 1e-9,
           f"golden mismatches {mismatched}, W_1/5 mesh max-norm error {norm_err:.1e}, "
           f"min semiaxis {min_axis}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
