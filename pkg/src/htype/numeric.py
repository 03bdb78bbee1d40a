"""Shared numerical kernels.

Guarded trig quotients (series fallbacks near zero), bracketed bisection,
central differences, and the piecewise-linear path machinery behind the
independent brute-force distance estimator. The path kernels are hot and
live in :mod:`htype.kernels` (compiled when available).
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import kernels
from .algebra import GroupPoint, HTypeAlgebra

__all__ = [
    "sin_over",
    "versine_over_sq",
    "arcdefect_over_cube",
    "sinc_like",
    "SIN_OVER_GUARD",
    "VERSINE_GUARD",
    "ARCDEFECT_GUARD",
    "Bracket",
    "refine_root",
    "fd_derivative",
    "PolylinePath",
    "polyline_endpoint",
    "polyline_length",
    "brute_distance",
]

# Guard thresholds. The first two quotients are evaluated cancellation-free
# (sin(u)/u directly; 1-cos via the half-angle square), so a tiny guard
# suffices. (u - sin u)/u^3 loses ~u^-2 digits to cancellation when done
# directly, so its seam sits where both branches carry < 1e-13 error.
SIN_OVER_GUARD = 1e-4
VERSINE_GUARD = 1e-4
ARCDEFECT_GUARD = 0.05


def sin_over(u: float) -> float:
    """sin(u)/u, equal to 1 at u=0."""
    if abs(u) < SIN_OVER_GUARD:
        uu = u * u
        return 1.0 - uu / 6.0 + uu * uu / 120.0
    return math.sin(u) / u


def versine_over_sq(u: float) -> float:
    """(1 - cos(u))/u^2, equal to 1/2 at u=0."""
    if abs(u) < VERSINE_GUARD:
        uu = u * u
        return 0.5 - uu / 24.0 + uu * uu / 720.0
    s = math.sin(0.5 * u)
    return 2.0 * s * s / (u * u)


def arcdefect_over_cube(u: float) -> float:
    """(u - sin(u))/u^3, equal to 1/6 at u=0."""
    if abs(u) < ARCDEFECT_GUARD:
        uu = u * u
        return (
            1.0 / 6.0
            - uu / 120.0
            + uu * uu / 5040.0
            - uu * uu * uu / 362880.0
        )
    return (u - math.sin(u)) / (u * u * u)


def sinc_like(u: float) -> float:
    """sin(u)/u with series guard; 1 at u=0 and strictly below 1 elsewhere
    (up to float resolution: below ~1.5e-8 the true value rounds to 1.0)."""
    return sin_over(u)


@dataclass(frozen=True)
class Bracket:
    """Sign-change interval for a scalar root."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.f_lo * self.f_hi > 0.0:
            raise ValueError(
                f"not a sign change: f({self.lo})={self.f_lo}, "
                f"f({self.hi})={self.f_hi}"
            )


def refine_root(f, b: Bracket, tol: float) -> float:
    """Bisect a bracketed root down to interval width tol; returns the
    midpoint. Bisection is deliberate: the callers' functions have poles
    just outside their brackets, where derivative methods misbehave."""
    lo, hi, f_lo = b.lo, b.hi, b.f_lo
    if f_lo == 0.0:
        return lo
    if b.f_hi == 0.0:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # float resolution reached
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def fd_derivative(f, t: float, h: float) -> np.ndarray:
    """Central difference (f(t+h) - f(t-h)) / 2h."""
    if h <= 0.0:
        raise ValueError("step h must be positive")
    return (np.asarray(f(t + h)) - np.asarray(f(t - h))) / (2.0 * h)


@dataclass(frozen=True, eq=False)
class PolylinePath:
    """Piecewise-linear horizontal control given by its waypoints."""

    knots: np.ndarray  # (K, m)

    def __post_init__(self):
        kn = np.asarray(self.knots, dtype=np.float64)
        if kn.ndim != 2 or kn.shape[0] < 2:
            raise ValueError("need a (K, m) array with at least two knots")
        object.__setattr__(self, "knots", np.ascontiguousarray(kn))


def _as_knots(alg: HTypeAlgebra, knots) -> np.ndarray:
    kn = knots.knots if isinstance(knots, PolylinePath) else knots
    kn = np.ascontiguousarray(np.asarray(kn, dtype=np.float64))
    if kn.ndim != 2 or kn.shape[0] < 2:
        raise ValueError("need a (K, m) array with at least two knots")
    if kn.shape[1] != alg.m:
        raise ValueError(
            f"knots have dimension {kn.shape[1]}, algebra expects {alg.m}"
        )
    return kn


def polyline_endpoint(alg: HTypeAlgebra, knots) -> GroupPoint:
    """Exact endpoint of the path: along each straight x-segment the
    vertical rate (1/2)<C^k x, xdot> integrates to (1/2)<C^k a, b> because
    the quadratic term dies by skew-symmetry."""
    kn = _as_knots(alg, knots)
    z = kernels.polyline_z(alg.C, kn)
    return GroupPoint(x=kn[-1].copy(), z=z)


def polyline_length(knots) -> float:
    kn = knots.knots if isinstance(knots, PolylinePath) else knots
    kn = np.ascontiguousarray(np.asarray(kn, dtype=np.float64))
    if kn.ndim != 2 or kn.shape[0] < 2:
        raise ValueError("need a (K, m) array with at least two knots")
    return kernels.polyline_length(kn)


_DEFAULT_SEED = 1618
# gentle ramp: jumping the penalty weight too fast strands restarts in
# poor loop shapes (observed on vertical targets)
_LAMBDA_SCHEDULE = (3e1, 1e2, 3e2, 1e3, 3e3, 1e4, 1e5, 1e6, 1e8, 1e10)


def brute_distance(
    alg: HTypeAlgebra,
    target: GroupPoint,
    knot_count: int = 16,
    restarts: int = 32,
    seed: int | None = None,
) -> float:
    """Upper-bound estimate of the CC distance by direct path optimization.

    Minimizes length + lambda * |z_end - z_target|^2 over polylines with
    pinned endpoints (origin and target x), ramping lambda. The returned
    value is length + 2*sqrt(4*pi*|z mismatch|), which can never fall
    below the true distance: correcting the vertical miss costs at most
    sqrt(4*pi*|dz|) by left translation, so even a path that "cheats" is
    charged twice the repair. Independent of the closed-form geodesics.
    """
    if knot_count < 8:
        raise ValueError("knot_count must be at least 8")
    if restarts < 1:
        raise ValueError("restarts must be positive")
    if seed is None:
        seed = int(os.environ.get("HTYPE_SEED", _DEFAULT_SEED))

    x_t = np.asarray(target.x, dtype=np.float64)
    z_t = np.ascontiguousarray(np.asarray(target.z, dtype=np.float64))
    if x_t.shape != (alg.m,) or z_t.shape != (alg.n,):
        raise ValueError("target dimensions do not match the algebra")

    C = alg.C
    zt_norm = float(np.linalg.norm(z_t))
    scale = max(float(np.linalg.norm(x_t)), math.sqrt(4.0 * math.pi * zt_norm), 1.0)
    sigma = 0.7 * scale / math.sqrt(knot_count)
    base = np.linspace(np.zeros(alg.m), x_t, knot_count)

    best = math.inf
    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.default_rng(child)
        W = np.ascontiguousarray(base.copy())
        W[1:-1] += sigma * rng.standard_normal((knot_count - 2, alg.m))
        for lam in _LAMBDA_SCHEDULE:
            W, _ = kernels.descend(
                C, W, z_t, lam, step0=0.05 * scale, max_iter=600,
                step_min=1e-14 * scale,
            )
        length = kernels.polyline_length(W)
        miss = float(np.linalg.norm(kernels.polyline_z(C, W) - z_t))
        best = min(best, length + 2.0 * math.sqrt(4.0 * math.pi * miss))
    return best
