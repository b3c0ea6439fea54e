"""Entanglement-witness analysis and the operator families used throughout."""
import enum
from dataclasses import dataclass

import numpy as np

from .classification import (ClassLabel, OperatorClass, TOL_CLASS, classify_by_determinants,
                             classify_by_ellipsoid)
from .ellipsoid import (TOL_CONTACT, TOL_GEOM, TOL_CHI, Containment, EllipsoidRep,
                        canonical_operator, ellipsoid_of, is_inside_bloch_sphere, max_radius)
from .errors import NotAState, NotAWitnessEllipsoid, NotEntangled, NotReal
from .pauli import (SIGMA, I2, check_operator, det4, eigenvalues4, partial_transpose_B)
from .sampling import haar_kets, random_state, random_unit_vector

TOL_EW4 = 1e-9

PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
PHI_MINUS = np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2)
PSI_PLUS = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
PSI_MINUS = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def projector(psi):
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def flip_witness():
    """Half the swap operator, |phi+><phi+|^{T_B}."""
    return np.eye(4, dtype=complex)[[0, 2, 1, 3]] / 2


def wp_witness(p):
    p = float(p)
    return 0.5 * np.array([[p, 0, 0, 0],
                           [0, 1 - p, 1, 0],
                           [0, 1, 1 - p, 0],
                           [0, 0, 0, p]], dtype=complex)


def werner(w):
    """w |phi+><phi+| + (1 - w) 1/4."""
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"Werner weight must lie in [0, 1], got {w}")
    return w * projector(PHI_PLUS) + (1 - w) * np.eye(4, dtype=complex) / 4


def schmidt_coefficients(psi):
    return np.linalg.svd(np.asarray(psi, dtype=complex).reshape(2, 2), compute_uv=False)


def _entangled_ket(psi):
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (4,):
        raise ValueError("expected a two-qubit ket of length 4")
    if abs(np.linalg.norm(psi) - 1) > TOL_GEOM:
        raise ValueError("ket is not normalized")
    if schmidt_coefficients(psi).min() <= TOL_GEOM:
        raise NotEntangled("ket is a product state")
    return psi


def pure_state_witness(psi):
    """|psi><psi|^{T_B} for an entangled ket psi; optimal by construction."""
    return partial_transpose_B(projector(_entangled_ket(psi)))


def ew4_optimal(psi):
    """(rho + rho^{T_B}) / 2 for a real entangled ket: optimal within EW4."""
    psi = _entangled_ket(psi)
    if np.max(np.abs(psi.imag)) > 1e-12:
        raise NotReal("EW4-optimal construction needs real amplitudes")
    rho = projector(psi.real)
    return 0.5 * (rho + partial_transpose_B(rho))


@dataclass(frozen=True)
class WitnessProperties:
    is_witness: bool
    optimal: bool
    weakly_optimal: bool
    in_EW4: bool
    negative_eigenvalue: float
    class_label: ClassLabel
    max_radius: float
    eigenvalues: tuple


def analyze_witness(B, tol_contact=TOL_CONTACT):
    B = check_operator(B)
    E = ellipsoid_of(B)
    label = classify_by_determinants(B, E=E)
    evs = eigenvalues4(B)
    rad = max_radius(E)
    block_positive = label.cls is not OperatorClass.NOT_BLOCK_POSITIVE
    is_witness = block_positive and det4(B) < -TOL_CLASS
    optimal = (is_witness and not E.singular_b and E.c_norm <= TOL_GEOM
               and np.linalg.norm(E.Q - np.eye(3)) <= TOL_GEOM and E.chi == 1)
    touching = is_inside_bloch_sphere(E, tol_contact) is Containment.TOUCHING
    in_ew4 = (is_witness
              and np.linalg.norm(B - B.T) <= TOL_EW4
              and np.linalg.norm(B - partial_transpose_B(B)) <= TOL_EW4)
    return WitnessProperties(
        is_witness=bool(is_witness),
        optimal=bool(optimal),
        weakly_optimal=bool(is_witness and touching),
        in_EW4=bool(in_ew4),
        negative_eigenvalue=float(evs[0]),
        class_label=label,
        max_radius=float(rad),
        eigenvalues=tuple(float(x) for x in evs),
    )


def detects(W, rho, tol=TOL_CLASS):
    rho = check_operator(rho)
    if eigenvalues4(rho)[0] < -1e-10:
        raise NotAState("rho is not positive semidefinite")
    return float(np.trace(rho @ np.asarray(W)).real) < -tol


class Finer(enum.Enum):
    FINER = "Finer"
    COUNTEREXAMPLE = "CounterexampleState"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True, eq=False)
class FinerResult:
    verdict: Finer
    state: np.ndarray | None = None
    certificate_t: float | None = None
    n_checked: int = 0


def finer_certificate(W1, W2, tol=1e-10, iters=200):
    """Largest t in (0, 1] making W2 - t W1 positive semidefinite, else None.

    Such a t proves that W1 detects everything W2 detects, since
    tr(rho W2) < 0 forces t tr(rho W1) < -tr(rho (W2 - t W1)) <= 0.
    lambda_min(W2 - t W1) is concave in t, so golden-section search finds its maximum.
    """
    W1 = np.asarray(W1, dtype=complex)
    W2 = np.asarray(W2, dtype=complex)

    def f(t):
        return np.linalg.eigvalsh(W2 - t * W1)[0]

    lo, hi = 0.0, 1.0
    g = (np.sqrt(5) - 1) / 2
    x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = f(x1)
    best_t, best = max([(1.0, f(1.0)), (x1, f1), (x2, f2)], key=lambda p: p[1])
    return best_t if best >= -tol and best_t > 0 else None


def _pure_expectations(W, kets):
    return np.einsum("ni,ij,nj->n", kets.conj(), np.asarray(W), kets).real


def is_finer(W1, W2, seed=0, n_samples=100_000, n_mixed=10_000, tol=TOL_CLASS):
    """Decide whether W1 detects every state detected by W2.

    First looks for a positive-semidefinite certificate (``Finer``).  Failing
    that, searches for a state rho with tr(rho W2) < 0 <= tr(rho W1): random
    pure and mixed states, boundary points of the joint numerical range of
    (W1, W2), and mixtures of W2-detected states with W1-positive states along
    the line tr(rho W1) = 0.  Returns ``Inconclusive`` if nothing is found.
    """
    W1 = check_operator(W1)
    W2 = check_operator(W2)
    t = finer_certificate(W1, W2)
    if t is not None:
        return FinerResult(Finer.FINER, certificate_t=float(t))

    rng = np.random.default_rng(seed)
    kets = [haar_kets(rng, n_samples)]
    for theta in np.linspace(0.0, 2 * np.pi, 720, endpoint=False):
        _, V = np.linalg.eigh(np.cos(theta) * W2 + np.sin(theta) * W1)
        kets.append(V[:, :1].T)
    kets = np.vstack(kets)
    x1 = _pure_expectations(W1, kets)
    x2 = _pure_expectations(W2, kets)
    n_checked = len(kets)

    hit = np.flatnonzero((x2 < -tol) & (x1 >= 0))
    if hit.size:
        k = hit[np.argmin(x2[hit])]
        return FinerResult(Finer.COUNTEREXAMPLE, state=np.outer(kets[k], kets[k].conj()),
                           n_checked=n_checked)

    mixed = np.array([random_state(rng) for _ in range(n_mixed)]) if n_mixed else np.zeros((0, 4, 4))
    if n_mixed:
        m1 = np.einsum("nij,ji->n", mixed, W1).real
        m2 = np.einsum("nij,ji->n", mixed, W2).real
        n_checked += n_mixed
        hit = np.flatnonzero((m2 < -tol) & (m1 >= 0))
        if hit.size:
            k = hit[np.argmin(m2[hit])]
            return FinerResult(Finer.COUNTEREXAMPLE, state=mixed[k], n_checked=n_checked)

    # mix a W2-detected pure state P with a W1-positive pure state Q where tr(rho W1) = 0
    det_idx = np.flatnonzero(x2 < -tol)
    pos_idx = np.flatnonzero(x1 > 0)
    if det_idx.size and pos_idx.size:
        det_idx = det_idx[np.argsort(x2[det_idx])][:64]
        s = x1[det_idx][:, None] / (x1[det_idx][:, None] - x1[pos_idx][None, :])
        cross = x2[det_idx][:, None] + s * (x2[pos_idx][None, :] - x2[det_idx][:, None])
        i, j = np.unravel_index(np.argmin(cross), cross.shape)
        if cross[i, j] < -tol:
            P, Q = kets[det_idx[i]], kets[pos_idx[j]]
            rho = (1 - s[i, j]) * np.outer(P, P.conj()) + s[i, j] * np.outer(Q, Q.conj())
            r1 = float(np.trace(rho @ W1).real)
            r2 = float(np.trace(rho @ W2).real)
            if r1 < 0:
                # nudge towards Q so rounding cannot leave tr(rho W1) negative
                sj = s[i, j] + 1e-12
                rho = (1 - sj) * np.outer(P, P.conj()) + sj * np.outer(Q, Q.conj())
                r1 = float(np.trace(rho @ W1).real)
                r2 = float(np.trace(rho @ W2).real)
            if r1 >= 0 and r2 < -tol:
                return FinerResult(Finer.COUNTEREXAMPLE, state=rho, n_checked=n_checked)
    return FinerResult(Finer.INCONCLUSIVE, n_checked=n_checked)


def _pauli_features(kets):
    """Expectations of all sigma_mu x sigma_nu (mu, nu = 0..3) for each ket, shape (n, 16)."""
    basis = [I2] + list(SIGMA)
    ops = np.stack([np.kron(s, t) for s in basis for t in basis])
    return np.einsum("ni,kij,nj->nk", kets.conj(), ops, kets).real


def _canonical_coeffs(c, Tt):
    v = np.zeros(16)
    v[0] = 1.0
    v[[4, 8, 12]] = c
    v[[5, 6, 7, 9, 10, 11, 13, 14, 15]] = np.asarray(Tt).ravel()
    return v / 4


def _round(x, nd=12):
    v = round(float(x), nd)
    return 0.0 if v == 0 else v


def conjecture_explore(E_star, seed=0, n_witnesses=1000, n_states=20_000, tol=TOL_CLASS):
    """Sample witnesses whose ellipsoids lie inside E_star and compare them with
    the witness(es) whose ellipsoid is E_star itself.

    Members are built as ``c = c* + T*.(s d)``, ``T~ = T*.(s M)`` with the
    affine preimage ``d + M nu`` scaled into the unit ball, so containment in
    E_star holds by construction; non-witnesses are rejected.  For each
    E_star witness W* the report gives the fraction of members all of whose
    detected sample states are also detected by W*, and lists members that
    appear finer than W* on the samples.  A candidate only counts as a
    counterexample to the optimality of W* when a positive-semidefinite
    certificate confirms it is finer and it differs from W*.

    Results are evidence, not proof.  Same seed, same report.
    """
    if E_star.singular_b:
        raise NotAWitnessEllipsoid("E_star is a point and represents no witness")
    star_class = classify_by_ellipsoid(E_star)
    if not star_class.is_witness:
        raise NotAWitnessEllipsoid(f"E_star belongs to {star_class}, not Class C or D")

    rng = np.random.default_rng(seed)
    cs, Ts = E_star.c, E_star.T_tilde
    kets = haar_kets(rng, n_states)
    feats = _pauli_features(kets)

    members = []
    attempts = 0
    while len(members) < n_witnesses and attempts < 50 * n_witnesses:
        attempts += 1
        d = random_unit_vector(rng) * rng.uniform() ** (1 / 3)
        M = rng.normal(size=(3, 3))
        pre = EllipsoidRep.from_canonical(d, M)
        s = 1.0 / max_radius(pre)
        if rng.random() >= 0.5:
            s *= rng.uniform(0.85, 1.0)
        c = cs + Ts @ (s * d)
        Tt = Ts @ (s * M)
        W = canonical_operator(EllipsoidRep.from_canonical(c, Tt))
        if not classify_by_determinants(W).is_witness:
            continue
        det = float(np.linalg.det(Tt))
        members.append((c, Tt, W, 0 if abs(det) <= TOL_CHI else int(np.sign(det))))

    member_vals = (np.array([_canonical_coeffs(c, Tt) for c, Tt, _, _ in members]) @ feats.T
                   if members else np.zeros((0, n_states)))

    variants = []
    flip = np.diag([1.0, -1.0, 1.0])
    for name, Tt_star in (("as_given", Ts), ("partial_transpose", Ts @ flip)):
        E_var = EllipsoidRep.from_canonical(cs, Tt_star)
        W_star = canonical_operator(E_var)
        label = classify_by_determinants(W_star)
        entry = {"variant": name, "chi": E_var.chi, "class": label.cls.value,
                 "is_witness": label.is_witness}
        if not label.is_witness:
            variants.append(entry)
            continue
        star_vals = _canonical_coeffs(cs, Tt_star) @ feats.T
        star_det = star_vals < -tol
        by_chi = {}
        n_dominated = 0
        candidates = 0
        counterexamples = []
        for k, (c, Tt, W, chi) in enumerate(members):
            mv = member_vals[k]
            m_det = mv < -tol
            dominated = bool(np.all(star_det[m_det]))
            n_dominated += dominated
            stats = by_chi.setdefault(str(chi), {"n": 0, "dominated_by_star": 0})
            stats["n"] += 1
            stats["dominated_by_star"] += dominated
            same = np.linalg.norm(W - W_star) <= TOL_EW4
            if not same and np.all(m_det[star_det]):
                candidates += 1
                if finer_certificate(W, W_star) is not None:
                    counterexamples.append({
                        "index": k,
                        "c": [_round(x) for x in c],
                        "T_tilde": [[_round(x) for x in row] for row in Tt],
                    })
        entry.update({
            "fraction_dominated_by_star": _round(n_dominated / len(members)) if members else None,
            "by_member_chirality": dict(sorted(by_chi.items())),
            "candidate_counterexamples": candidates,
            "counterexamples": counterexamples,
        })
        variants.append(entry)

    return {
        "seed": int(seed),
        "n_witnesses_requested": int(n_witnesses),
        "n_witnesses_sampled": len(members),
        "n_attempts": attempts,
        "n_states": int(n_states),
        "estar": {
            "c": [_round(x) for x in cs],
            "Q": [[_round(x) for x in row] for row in E_star.Q],
            "chi": E_star.chi,
            "class": star_class.cls.value,
        },
        "variants": variants,
    }
