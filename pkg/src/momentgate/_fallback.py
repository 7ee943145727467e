"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``.

Signatures and return conventions match the compiled module exactly. The
scalar kernels work on nested lists; the two boundary scans are vectorized
with numpy since a Python-level loop over 10**7 samples is not usable.
"""

import math

import numpy as np

_SCAN_CHUNK = 1 << 20


def jacobi_eigh(a, max_sweeps=64):
    A = [[float(v) for v in row] for row in np.asarray(a, dtype=np.float64)]
    n = len(A)
    V = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    sweep = 0
    converged = False
    while sweep <= max_sweeps:
        off = 0.0
        total = 0.0
        for p in range(n):
            total += A[p][p] * A[p][p]
            for q in range(p + 1, n):
                off += 2.0 * A[p][q] * A[p][q]
        total += off
        if off <= 1e-30 * total:
            converged = True
            break
        if sweep == max_sweeps:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p][q]
                if apq == 0.0:
                    continue
                theta = (A[q][q] - A[p][p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for row in A:
                    x = row[p]
                    y = row[q]
                    row[p] = c * x - s * y
                    row[q] = s * x + c * y
                Ap = A[p]
                Aq = A[q]
                for k in range(n):
                    x = Ap[k]
                    y = Aq[k]
                    Ap[k] = c * x - s * y
                    Aq[k] = s * x + c * y
                Ap[q] = 0.0
                Aq[p] = 0.0
                for row in V:
                    x = row[p]
                    y = row[q]
                    row[p] = c * x - s * y
                    row[q] = s * x + c * y
    w = np.array([A[i][i] for i in range(n)], dtype=np.float64)
    return w, np.array(V, dtype=np.float64).reshape(n, n), sweep, converged


def lu_det(a):
    A = [[float(v) for v in row] for row in np.asarray(a, dtype=np.float64)]
    n = len(A)
    det = 1.0
    for k in range(n):
        piv = k
        best = abs(A[k][k])
        for i in range(k + 1, n):
            if abs(A[i][k]) > best:
                best = abs(A[i][k])
                piv = i
        if best == 0.0:
            return 0.0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        pivot_row = A[k]
        det *= pivot_row[k]
        for i in range(k + 1, n):
            f = A[i][k] / pivot_row[k]
            if f != 0.0:
                row = A[i]
                for j in range(k + 1, n):
                    row[j] -= f * pivot_row[j]
    return det


def _secular(s2, p, lam):
    f = -1.0
    d = 0.0
    for si, pi in zip(s2, p):
        den = si + lam
        term = si * pi * pi / (den * den)
        f += term
        d -= 2.0 * term / den
    return f, d


def secular_root(s2_in, p_in, lo, hi, tol=1e-12, max_iter=100):
    s2 = [float(v) for v in s2_in]
    p = [float(v) for v in p_in]
    lam = float(hi)
    lo = float(lo)
    hi = float(hi)
    for it in range(1, max_iter + 1):
        f, d = _secular(s2, p, lam)
        if abs(f) <= tol:
            return lam, f, it, True
        if f > 0.0:
            lo = lam
        else:
            hi = lam
        step = lam - f / d if d < 0.0 else lo - 1.0
        if step <= lo or step >= hi:
            step = 0.5 * (lo + hi)
        if step == lam:
            return lam, f, it, abs(f) <= tol
        lam = step
    f, _ = _secular(s2, p, lam)
    return lam, f, max_iter, abs(f) <= tol


def ellipse_scan(a, b, px, py, resolution):
    step = 2.0 * math.pi / resolution
    best = math.inf
    best_i = 0
    for start in range(0, resolution, _SCAN_CHUNK):
        idx = np.arange(start, min(start + _SCAN_CHUNK, resolution))
        t = idx * step
        dist = (a * np.cos(t) - px) ** 2 + (b * np.sin(t) - py) ** 2
        k = int(np.argmin(dist))
        if dist[k] < best:
            best = float(dist[k])
            best_i = int(idx[k])
    return best_i * step


def ellipsoid_scan(a, b, c, px, py, pz, n_theta, n_phi):
    t = np.arange(n_theta) * (2.0 * math.pi / n_theta)
    cos_t = a * np.cos(t)
    sin_t = b * np.sin(t)
    f_step = math.pi / n_phi
    best = math.inf
    best_t = best_f = 0.0
    rows = max(1, _SCAN_CHUNK // max(n_theta, 1))
    for start in range(0, n_phi + 1, rows):
        f = np.arange(start, min(start + rows, n_phi + 1)) * f_step
        sf = np.sin(f)[:, None]
        dz = (c * np.cos(f) - pz)[:, None]
        dist = (sf * cos_t - px) ** 2 + (sf * sin_t - py) ** 2 + dz**2
        j, i = np.unravel_index(int(np.argmin(dist)), dist.shape)
        if dist[j, i] < best:
            best = float(dist[j, i])
            best_t = float(t[i])
            best_f = float(f[j])
    return best_t, best_f
