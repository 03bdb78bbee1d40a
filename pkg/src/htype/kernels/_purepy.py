"""Pure-numpy twin of the compiled polyline kernels.

Same API and same descent schedule as ``_core``; used when the extension
is unavailable or when HTYPE_KERNEL=py forces it.
"""
import numpy as np


def polyline_z(C, knots):
    # z_k = 1/2 * sum_s <C^k a_s, b_s>; <C^k a, b> = sum_{i,j} C[k,j,i] a_i b_j
    return 0.5 * np.einsum("kji,si,sj->k", C, knots[:-1], knots[1:])


def polyline_length(knots):
    d = np.diff(knots, axis=0)
    return float(np.sqrt((d * d).sum(axis=1)).sum())


def objective(C, knots, z_target, lam):
    dz = polyline_z(C, knots) - z_target
    return polyline_length(knots) + lam * float(dz @ dz)


def objective_grad(C, knots, z_target, lam):
    d = np.diff(knots, axis=0)
    norms = np.sqrt((d * d).sum(axis=1))
    u = np.divide(d, norms[:, None], out=np.zeros_like(d), where=norms[:, None] > 0.0)
    dz = polyline_z(C, knots) - z_target
    value = float(norms.sum()) + lam * float(dz @ dz)
    grad = np.zeros_like(knots)
    grad[1:-1] = u[:-1] - u[1:]
    # d(z_k)/d(w_s) = C^k (w_{s-1} - w_{s+1}) / 2
    grad[1:-1] += np.einsum("k,kil,sl->si", lam * dz, C, knots[:-2] - knots[2:])
    return value, grad


def descend(C, knots, z_target, lam, step0, max_iter, step_min):
    W = np.array(knots, dtype=np.float64, order="C", copy=True)
    v, G = objective_grad(C, W, z_target, lam)
    step = step0
    for _ in range(max_iter):
        if not np.any(G):
            break
        T = W - step * G  # boundary rows of G are zero
        vt = objective(C, T, z_target, lam)
        if vt < v:
            W = T
            v, G = objective_grad(C, W, z_target, lam)
            step *= 1.3
        else:
            step *= 0.5
            if step < step_min:
                break
    return W, v
