# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled numerical kernels.

Every function here has a pure-Python twin in :mod:`momentgate._fallback`
with the same signature and the same return convention. Selection happens
in :mod:`momentgate.kernels`.
"""

import numpy as np

from libc.math cimport cos, fabs, sin, sqrt, M_PI


def jacobi_eigh(a, int max_sweeps=64):
    """Cyclic Jacobi eigen-decomposition of a small symmetric matrix.

    Returns ``(w, V, sweeps, converged)`` with unsorted eigenvalues ``w``
    and eigenvectors in the columns of ``V``.
    """
    work = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] A = work
    cdef Py_ssize_t n = A.shape[0]
    vecs = np.eye(n, dtype=np.float64)
    cdef double[:, ::1] V = vecs
    cdef Py_ssize_t p, q, k
    cdef int sweep = 0
    cdef bint converged = False
    cdef double off, total, apq, theta, t, c, s, x, y

    while sweep <= max_sweeps:
        off = 0.0
        total = 0.0
        for p in range(n):
            total += A[p, p] * A[p, p]
            for q in range(p + 1, n):
                off += 2.0 * A[p, q] * A[p, q]
        total += off
        if off <= 1e-30 * total:
            converged = True
            break
        if sweep == max_sweeps:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    x = A[k, p]
                    y = A[k, q]
                    A[k, p] = c * x - s * y
                    A[k, q] = s * x + c * y
                for k in range(n):
                    x = A[p, k]
                    y = A[q, k]
                    A[p, k] = c * x - s * y
                    A[q, k] = s * x + c * y
                A[p, q] = 0.0
                A[q, p] = 0.0
                for k in range(n):
                    x = V[k, p]
                    y = V[k, q]
                    V[k, p] = c * x - s * y
                    V[k, q] = s * x + c * y

    w = np.empty(n, dtype=np.float64)
    cdef double[::1] wv = w
    for p in range(n):
        wv[p] = A[p, p]
    return w, vecs, sweep, bool(converged)


def lu_det(a):
    """Determinant by Gaussian elimination with partial pivoting."""
    work = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] A = work
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t i, j, k, piv
    cdef double det = 1.0, best, f, tmp
    for k in range(n):
        piv = k
        best = fabs(A[k, k])
        for i in range(k + 1, n):
            if fabs(A[i, k]) > best:
                best = fabs(A[i, k])
                piv = i
        if best == 0.0:
            return 0.0
        if piv != k:
            for j in range(n):
                tmp = A[k, j]
                A[k, j] = A[piv, j]
                A[piv, j] = tmp
            det = -det
        det *= A[k, k]
        for i in range(k + 1, n):
            f = A[i, k] / A[k, k]
            if f != 0.0:
                for j in range(k + 1, n):
                    A[i, j] -= f * A[k, j]
    return det


cdef double _secular(double[::1] s2, double[::1] p, double lam, double* deriv) noexcept:
    cdef Py_ssize_t i
    cdef double f = -1.0, d = 0.0, den, term
    for i in range(s2.shape[0]):
        den = s2[i] + lam
        term = s2[i] * p[i] * p[i] / (den * den)
        f += term
        d -= 2.0 * term / den
    deriv[0] = d
    return f


def secular_root(s2_in, p_in, double lo, double hi, double tol=1e-12, int max_iter=100):
    """Root of sum(s2*p**2/(s2+lam)**2) - 1 on [lo, hi] by bisection-guarded Newton.

    ``f`` must be positive at ``lo`` and non-positive at ``hi``. Returns
    ``(lam, f(lam), iterations, converged)``.
    """
    cdef double[::1] s2 = np.ascontiguousarray(s2_in, dtype=np.float64)
    cdef double[::1] p = np.ascontiguousarray(p_in, dtype=np.float64)
    cdef double lam = hi, f, d, step
    cdef int it
    for it in range(1, max_iter + 1):
        f = _secular(s2, p, lam, &d)
        if fabs(f) <= tol:
            return lam, f, it, True
        if f > 0.0:
            lo = lam
        else:
            hi = lam
        if d < 0.0:
            step = lam - f / d
        else:
            step = lo - 1.0
        if step <= lo or step >= hi:
            step = 0.5 * (lo + hi)
        if step == lam:
            return lam, f, it, fabs(f) <= tol
        lam = step
    f = _secular(s2, p, lam, &d)
    return lam, f, max_iter, fabs(f) <= tol


def ellipse_scan(double a, double b, double px, double py, long resolution):
    """Angle of the closest sample of ``(a cos t, b sin t)`` to ``(px, py)``."""
    cdef long i, best_i = 0
    cdef double t, dx, dy, dist, best = 1e308
    cdef double step = 2.0 * M_PI / resolution
    for i in range(resolution):
        t = i * step
        dx = a * cos(t) - px
        dy = b * sin(t) - py
        dist = dx * dx + dy * dy
        if dist < best:
            best = dist
            best_i = i
    return best_i * step


def ellipsoid_scan(double a, double b, double c, double px, double py, double pz,
                   long n_theta, long n_phi):
    """Closest sample of ``(a sin f cos t, b sin f sin t, c cos f)`` on a
    ``n_theta`` by ``n_phi + 1`` grid. Returns ``(t, f)``."""
    cdef long i, j, best_i = 0, best_j = 0
    cdef double sf, dx, dy, dz, dz2, dist, best = 1e308
    cdef double t_step = 2.0 * M_PI / n_theta
    cdef double f_step = M_PI / n_phi
    # trig tables for the inner loop, shared by every row
    ax_np = np.empty(n_theta)
    by_np = np.empty(n_theta)
    cdef double[::1] ax = ax_np, by = by_np
    for i in range(n_theta):
        ax[i] = a * cos(i * t_step)
        by[i] = b * sin(i * t_step)
    for j in range(n_phi + 1):
        sf = sin(j * f_step)
        dz = c * cos(j * f_step) - pz
        dz2 = dz * dz
        if dz2 >= best:
            continue
        for i in range(n_theta):
            dx = sf * ax[i] - px
            dy = sf * by[i] - py
            dist = dx * dx + dy * dy + dz2
            if dist < best:
                best = dist
                best_i = i
                best_j = j
    return best_i * t_step, best_j * f_step
