"""Hot numeric kernels.

Everything here operates on small dense arrays (4x4 operators, 3x3
correlation matrices) and is called many thousands of times by the oracles
and the property tests, so the loops are written out explicitly and compiled
with numba when available (see :mod:`steerwit._accel`).
"""
import numpy as np

from ._accel import optional_njit

EPS = 2.220446049250313e-16


@optional_njit(cache=True)
def jacobi_eigh(A, max_sweeps=100):
    """Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Returns ``(w, V, converged)`` with ascending real eigenvalues ``w`` and
    unitary ``V`` whose columns are the eigenvectors.  Each rotation first
    strips the phase of the pivot element and then applies a real Givens
    rotation, so the iteration is the classical real Jacobi method in disguise.
    """
    n = A.shape[0]
    a = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            a[i, j] = 0.5 * (A[i, j] + np.conj(A[j, i]))
    v = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        v[i, i] = 1.0

    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += abs(a[i, j]) ** 2
    scale = np.sqrt(scale)

    converged = False
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += abs(a[p, q]) ** 2
        if np.sqrt(off) <= 4.0 * EPS * scale:
            converged = True
            break
        for p in range(n):
            for q in range(p + 1, n):
                g = abs(a[p, q])
                if g == 0.0:
                    continue
                ph = a[p, q] / g
                cph = np.conj(ph)
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * g)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * cph * akq
                    a[k, q] = s * akp + c * cph * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * ph * aqk
                    a[q, k] = s * apk + c * ph * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * cph * vkq
                    v[k, q] = s * vkp + c * cph * vkq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    if not converged:
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += abs(a[p, q]) ** 2
        converged = np.sqrt(off) <= 4.0 * EPS * scale

    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    order = np.argsort(w)
    ws = np.empty(n)
    vs = np.empty((n, n), dtype=np.complex128)
    for j in range(n):
        ws[j] = w[order[j]]
        for i in range(n):
            vs[i, j] = v[i, order[j]]
    return ws, vs, converged


@optional_njit(cache=True)
def lu_det(A):
    """Determinant by Gaussian elimination with partial pivoting."""
    n = A.shape[0]
    a = A.astype(np.complex128).copy()
    det = 1.0 + 0.0j
    for k in range(n):
        piv = k
        best = abs(a[k, k])
        for i in range(k + 1, n):
            if abs(a[i, k]) > best:
                best = abs(a[i, k])
                piv = i
        if best == 0.0:
            return 0.0 + 0.0j
        if piv != k:
            for j in range(n):
                tmp = a[k, j]
                a[k, j] = a[piv, j]
                a[piv, j] = tmp
            det = -det
        det *= a[k, k]
        for i in range(k + 1, n):
            f = a[i, k] / a[k, k]
            for j in range(k, n):
                a[i, j] -= f * a[k, j]
    return det


@optional_njit(cache=True)
def _sym_eigh3(M):
    w, V, _ = jacobi_eigh(M.astype(np.complex128), 100)
    Vr = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            Vr[i, j] = V[i, j].real
    # Real symmetric input gives real eigenvectors up to a global phase per column.
    for j in range(3):
        k = 0
        for i in range(3):
            if abs(V[i, j]) > abs(V[k, j]):
                k = i
        ph = V[k, j] / abs(V[k, j])
        norm = 0.0
        for i in range(3):
            Vr[i, j] = (V[i, j] / ph).real
            norm += Vr[i, j] * Vr[i, j]
        norm = np.sqrt(norm)
        for i in range(3):
            Vr[i, j] /= norm
    return w, Vr


@optional_njit(cache=True)
def _radius_sq(c, Tt, nu):
    s = 0.0
    for i in range(3):
        r = c[i]
        for j in range(3):
            r += Tt[i, j] * nu[j]
        s += r * r
    return s


@optional_njit(cache=True)
def secular_max_radius(c, Tt, max_iter=200):
    """max over unit nu of |c + Tt nu|, via the secular equation.

    Maximizing ``|c|^2 + 2 g.nu + nu^T P nu`` with ``P = Tt^T Tt`` and
    ``g = Tt^T c`` on the unit sphere: the global maximizer solves
    ``(lam - P) nu = g`` with ``lam >= lambda_max(P)``.  The regular root is
    found by safeguarded Newton/bisection on ``1/|nu(lam)| - 1``; the hard
    case (``g`` orthogonal to the top eigenspace) is handled by adding a
    top-eigenvector component.  Every candidate is a unit vector, so the
    returned value never exceeds the true maximum.

    Returns ``(radius, nu_best)``.
    """
    P = np.zeros((3, 3))
    g = np.zeros(3)
    for i in range(3):
        for j in range(3):
            s = 0.0
            for k in range(3):
                s += Tt[k, i] * Tt[k, j]
            P[i, j] = s
            g[i] += Tt[j, i] * c[j]
    w, V = _sym_eigh3(P)
    gp = np.zeros(3)
    for i in range(3):
        for k in range(3):
            gp[i] += V[k, i] * g[k]
    pmax = w[2]
    trP = w[0] + w[1] + w[2]
    gnorm = np.sqrt(g[0] ** 2 + g[1] ** 2 + g[2] ** 2)
    group_tol = 1e-12 * max(1.0, abs(pmax))
    top = np.zeros(3, dtype=np.bool_)
    for i in range(3):
        top[i] = w[i] >= pmax - group_tol
    gtop2 = 0.0
    for i in range(3):
        if top[i]:
            gtop2 += gp[i] ** 2

    best = -1.0
    best_nu = V[:, 2].copy()
    nu = np.zeros(3)

    # hard-case candidate
    rest2 = 0.0
    for i in range(3):
        if not top[i]:
            rest2 += (gp[i] / (pmax - w[i])) ** 2
    if rest2 <= 1.0:
        extra = np.sqrt(1.0 - rest2)
        for sgn in (-1.0, 1.0):
            for i in range(3):
                nu[i] = sgn * extra * V[i, 2]
            for k in range(3):
                if not top[k]:
                    coef = gp[k] / (pmax - w[k])
                    for i in range(3):
                        nu[i] += coef * V[i, k]
            nn = np.sqrt(nu[0] ** 2 + nu[1] ** 2 + nu[2] ** 2)
            if nn == 0.0:
                continue
            for i in range(3):
                nu[i] /= nn
            val = _radius_sq(c, Tt, nu)
            if val > best:
                best = val
                best_nu = nu.copy()

    # regular root of |nu(lam)| = 1 on lam > pmax
    if gtop2 > 0.0 or rest2 > 1.0:
        lo = pmax + max(1e-15, 4.0 * EPS * abs(pmax))
        hi = pmax + gnorm + trP + 1.0
        lam = hi
        for _ in range(max_iter):
            s2 = 0.0
            ds2 = 0.0
            for i in range(3):
                d = lam - w[i]
                s2 += gp[i] ** 2 / (d * d)
                ds2 += -2.0 * gp[i] ** 2 / (d * d * d)
            nrm = np.sqrt(s2)
            h = 1.0 / nrm - 1.0
            if h < 0.0:
                lo = lam
            else:
                hi = lam
            if abs(h) <= 1e-15 or hi - lo <= 4.0 * EPS * max(1.0, abs(lam)):
                break
            # d/dlam (1/|nu|) = -(1/2) s2^(-3/2) ds2
            dh = -0.5 * ds2 / (s2 * nrm)
            step_ok = False
            if dh != 0.0:
                cand = lam - h / dh
                if lo < cand < hi:
                    lam = cand
                    step_ok = True
            if not step_ok:
                lam = 0.5 * (lo + hi)
        for i in range(3):
            nu[i] = 0.0
        for k in range(3):
            coef = gp[k] / (lam - w[k])
            for i in range(3):
                nu[i] += coef * V[i, k]
        nn = np.sqrt(nu[0] ** 2 + nu[1] ** 2 + nu[2] ** 2)
        if nn > 0.0:
            for i in range(3):
                nu[i] /= nn
            val = _radius_sq(c, Tt, nu)
            if val > best:
                best = val
                best_nu = nu.copy()

    if best < 0.0:
        best = _radius_sq(c, Tt, best_nu)
    return np.sqrt(max(best, 0.0)), best_nu


@optional_njit(cache=True)
def alternating_product_min(a, b, T, starts, max_iter=2000, tol=1e-16):
    """Minimize (1 + a.phi + b.nu + phi^T T nu)/4 over unit phi, nu.

    Block-coordinate descent with exact block minimizers, restarted from each
    row of ``starts`` (initial nu).  Returns ``(value, phi, nu)``; ties are
    broken by lexicographic order of phi so the result does not depend on the
    order the starts are visited in.
    """
    best = np.inf
    best_phi = np.zeros(3)
    best_nu = np.zeros(3)
    phi = np.zeros(3)
    nu = np.zeros(3)
    for s in range(starts.shape[0]):
        nn = np.sqrt(starts[s, 0] ** 2 + starts[s, 1] ** 2 + starts[s, 2] ** 2)
        for i in range(3):
            nu[i] = starts[s, i] / nn
        phi[0] = 0.0
        phi[1] = 0.0
        phi[2] = 1.0
        prev = np.inf
        val = np.inf
        for _ in range(max_iter):
            v = np.zeros(3)
            for i in range(3):
                v[i] = a[i]
                for j in range(3):
                    v[i] += T[i, j] * nu[j]
            vn = np.sqrt(v[0] ** 2 + v[1] ** 2 + v[2] ** 2)
            if vn > 1e-300:
                for i in range(3):
                    phi[i] = -v[i] / vn
            u = np.zeros(3)
            for j in range(3):
                u[j] = b[j]
                for i in range(3):
                    u[j] += T[i, j] * phi[i]
            un = np.sqrt(u[0] ** 2 + u[1] ** 2 + u[2] ** 2)
            if un > 1e-300:
                for j in range(3):
                    nu[j] = -u[j] / un
            val = 1.0
            for i in range(3):
                val += a[i] * phi[i] + b[i] * nu[i]
                for j in range(3):
                    val += phi[i] * T[i, j] * nu[j]
            val *= 0.25
            if prev - val <= tol:
                break
            prev = val
        better = val < best
        if not better and val == best:
            for i in range(3):
                if phi[i] < best_phi[i]:
                    better = True
                    break
                if phi[i] > best_phi[i]:
                    break
        if better:
            best = val
            for i in range(3):
                best_phi[i] = phi[i]
                best_nu[i] = nu[i]
    return best, best_phi, best_nu


@optional_njit(cache=True)
def grid_radius_sq(c, Tt, pts):
    """|c + Tt nu|^2 for every row nu of ``pts``."""
    out = np.empty(pts.shape[0])
    for k in range(pts.shape[0]):
        out[k] = _radius_sq(c, Tt, pts[k])
    return out


@optional_njit(cache=True)
def ascend_radius(c, Tt, nu0, steps=2000, tol=1e-16):
    """Monotone ascent of |c + Tt nu|^2 on the unit sphere.

    The objective is convex in nu, so stepping to the normalized gradient
    never decreases it (projected gradient ascent with unbounded step).
    """
    nu = nu0.copy()
    nn = np.sqrt(nu[0] ** 2 + nu[1] ** 2 + nu[2] ** 2)
    for i in range(3):
        nu[i] /= nn
    f = _radius_sq(c, Tt, nu)
    grad = np.zeros(3)
    for _ in range(steps):
        r = np.zeros(3)
        for i in range(3):
            r[i] = c[i]
            for j in range(3):
                r[i] += Tt[i, j] * nu[j]
        for j in range(3):
            grad[j] = 0.0
            for i in range(3):
                grad[j] += Tt[i, j] * r[i]
        gn = np.sqrt(grad[0] ** 2 + grad[1] ** 2 + grad[2] ** 2)
        if gn <= 1e-300:
            break
        trial = grad / gn
        ft = _radius_sq(c, Tt, trial)
        if ft <= f + tol:
            if ft > f:
                f = ft
                nu = trial
            break
        f = ft
        nu = trial
    return np.sqrt(f), nu
