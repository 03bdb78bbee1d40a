# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled polyline kernels.

Hot loop of the brute-force distance search: exact step-2 endpoint
integration along piecewise-linear horizontal paths, the penalized length
objective, its gradient, and an adaptive gradient descent that keeps the
first and last waypoints pinned.

The pure-numpy twin lives in ``_purepy``; both expose the same functions
and must agree (see tests/test_kernels.py).
"""
from libc.math cimport sqrt

import numpy as np


cdef double _length(const double[:, ::1] W) noexcept nogil:
    cdef Py_ssize_t K = W.shape[0], m = W.shape[1]
    cdef Py_ssize_t s, i
    cdef double tot = 0.0, acc, d
    for s in range(K - 1):
        acc = 0.0
        for i in range(m):
            d = W[s + 1, i] - W[s, i]
            acc += d * d
        tot += sqrt(acc)
    return tot


cdef void _zfill(const double[:, :, ::1] C, const double[:, ::1] W,
                 double[::1] z) noexcept nogil:
    # z_k = 1/2 * sum over segments of <C^k a, b>; the quadratic-in-t term
    # of the segment integral vanishes by skew-symmetry.
    cdef Py_ssize_t n = C.shape[0], m = C.shape[1], K = W.shape[0]
    cdef Py_ssize_t s, k, i, j
    cdef double acc
    for k in range(n):
        z[k] = 0.0
    for s in range(K - 1):
        for k in range(n):
            acc = 0.0
            for j in range(m):
                for i in range(m):
                    acc += C[k, j, i] * W[s, i] * W[s + 1, j]
            z[k] += 0.5 * acc


cdef double _objective(const double[:, :, ::1] C, const double[:, ::1] W,
                       const double[::1] zt, double lam,
                       double[::1] zbuf) noexcept nogil:
    cdef Py_ssize_t n = zbuf.shape[0], k
    cdef double pen = 0.0, d
    _zfill(C, W, zbuf)
    for k in range(n):
        d = zbuf[k] - zt[k]
        pen += d * d
    return _length(W) + lam * pen


cdef double _grad(const double[:, :, ::1] C, const double[:, ::1] W,
                  const double[::1] zt, double lam,
                  double[::1] zbuf, double[:, ::1] G) noexcept nogil:
    """Fill G (zero boundary rows) and return the objective value."""
    cdef Py_ssize_t n = C.shape[0], m = C.shape[1], K = W.shape[0]
    cdef Py_ssize_t s, k, i, l
    cdef double pen = 0.0, d, nrm, acc, coef, tot = 0.0
    _zfill(C, W, zbuf)
    for k in range(n):
        d = zbuf[k] - zt[k]
        pen += d * d
    for s in range(K):
        for i in range(m):
            G[s, i] = 0.0
    for s in range(K - 1):
        acc = 0.0
        for i in range(m):
            d = W[s + 1, i] - W[s, i]
            acc += d * d
        nrm = sqrt(acc)
        tot += nrm
        if nrm > 0.0:
            for i in range(m):
                d = (W[s + 1, i] - W[s, i]) / nrm
                G[s + 1, i] += d
                G[s, i] -= d
    # d(z_k)/d(w_s) = C^k (w_{s-1} - w_{s+1}) / 2, so the penalty chain rule
    # carries a net factor lam * (z_k - zt_k).
    for k in range(n):
        coef = lam * (zbuf[k] - zt[k])
        for s in range(1, K - 1):
            for i in range(m):
                acc = 0.0
                for l in range(m):
                    acc += C[k, i, l] * (W[s - 1, l] - W[s + 1, l])
                G[s, i] += coef * acc
    for i in range(m):
        G[0, i] = 0.0
        G[K - 1, i] = 0.0
    return tot + lam * pen


def polyline_z(const double[:, :, ::1] C, const double[:, ::1] knots):
    out = np.zeros(C.shape[0])
    cdef double[::1] z = out
    _zfill(C, knots, z)
    return out


def polyline_length(const double[:, ::1] knots):
    return _length(knots)


def objective(const double[:, :, ::1] C, const double[:, ::1] knots,
              const double[::1] z_target, double lam):
    zbuf_arr = np.zeros(C.shape[0])
    cdef double[::1] zbuf = zbuf_arr
    return _objective(C, knots, z_target, lam, zbuf)


def objective_grad(const double[:, :, ::1] C, const double[:, ::1] knots,
                   const double[::1] z_target, double lam):
    grad = np.zeros((knots.shape[0], knots.shape[1]))
    zbuf_arr = np.zeros(C.shape[0])
    cdef double[:, ::1] G = grad
    cdef double[::1] zbuf = zbuf_arr
    cdef double v = _grad(C, knots, z_target, lam, zbuf, G)
    return v, grad


def descend(const double[:, :, ::1] C, knots, const double[::1] z_target,
            double lam, double step0, int max_iter, double step_min):
    """Adaptive gradient descent with pinned endpoints.

    Deterministic: accepted moves shrink the objective strictly; the step
    grows 1.3x on success and halves on failure until step_min.
    """
    W_arr = np.array(knots, dtype=np.float64, order="C", copy=True)
    T_arr = W_arr.copy()
    G_arr = np.zeros_like(W_arr)
    z_arr = np.zeros(C.shape[0])
    cdef double[:, ::1] W = W_arr
    cdef double[:, ::1] T = T_arr
    cdef double[:, ::1] G = G_arr
    cdef double[::1] zbuf = z_arr
    cdef Py_ssize_t K = W.shape[0], m = W.shape[1]
    cdef Py_ssize_t s, i
    cdef int it
    cdef double v, vt, gn, step = step0
    v = _grad(C, W, z_target, lam, zbuf, G)
    with nogil:
        for it in range(max_iter):
            gn = 0.0
            for s in range(1, K - 1):
                for i in range(m):
                    gn += G[s, i] * G[s, i]
            if gn == 0.0:
                break
            for s in range(K):
                for i in range(m):
                    T[s, i] = W[s, i]
            for s in range(1, K - 1):
                for i in range(m):
                    T[s, i] = W[s, i] - step * G[s, i]
            vt = _objective(C, T, z_target, lam, zbuf)
            if vt < v:
                for s in range(1, K - 1):
                    for i in range(m):
                        W[s, i] = T[s, i]
                v = _grad(C, W, z_target, lam, zbuf, G)
                step *= 1.3
            else:
                step *= 0.5
                if step < step_min:
                    break
    return W_arr, v
