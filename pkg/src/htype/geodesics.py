"""Closed-form normal sub-Riemannian geodesics from the origin.

A geodesic is determined by the initial horizontal velocity xdot0 and the
covector theta. With w = |theta|, Omega = sum_k theta_k C^k and u = t*w:

    x(t)    = t*sin_over(u) * xdot0 + t^2 * versine_over_sq(u) * Omega xdot0
    xdot(t) = cos(u) * xdot0 + t*sin_over(u) * Omega xdot0
    z(t)    = (|xdot0|^2 / 2) * t^3 * arcdefect_over_cube(u) * theta

The z form is the simplified vertical part; ``zdot_full`` keeps the raw
four-term expression alive as an independent cross-check of the
simplification. theta = 0 degenerates to the straight line (t*xdot0, 0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Covector, GroupPoint, HTypeAlgebra, omega
from .numeric import arcdefect_over_cube, sin_over, versine_over_sq

__all__ = [
    "GeodesicSpec",
    "GeodesicSample",
    "eval_geodesic",
    "zdot_full",
    "zdot_closed",
    "geodesic_length",
]


@dataclass(frozen=True, eq=False)
class GeodesicSpec:
    """Initial covector data of one normal geodesic from the origin."""

    alg: HTypeAlgebra
    xdot0: np.ndarray
    theta: Covector

    def __post_init__(self):
        xd = np.atleast_1d(np.asarray(self.xdot0, dtype=np.float64))
        if xd.shape != (self.alg.m,):
            raise ValueError(
                f"xdot0 has shape {xd.shape}, algebra expects ({self.alg.m},)"
            )
        if not np.all(np.isfinite(xd)):
            raise ValueError("non-finite initial velocity")
        th = self.theta if isinstance(self.theta, Covector) else Covector(self.theta)
        if th.theta.shape != (self.alg.n,):
            raise ValueError(
                f"theta has shape {th.theta.shape}, algebra expects ({self.alg.n},)"
            )
        xd = np.ascontiguousarray(xd)
        xd.flags.writeable = False
        object.__setattr__(self, "xdot0", xd)
        object.__setattr__(self, "theta", th)

    @property
    def speed(self) -> float:
        return float(np.linalg.norm(self.xdot0))


@dataclass(frozen=True, eq=False)
class GeodesicSample:
    t: float
    point: GroupPoint
    velocity_x: np.ndarray


def eval_geodesic(spec: GeodesicSpec, t: float) -> GeodesicSample:
    """Evaluate position and horizontal velocity at parameter t >= 0."""
    if not (math.isfinite(t) and t >= 0.0):
        raise ValueError(f"t must be finite and >= 0, got {t}")
    xd0 = spec.xdot0
    w = spec.theta.norm
    if w == 0.0:
        point = GroupPoint(x=t * xd0, z=np.zeros(spec.alg.n))
        return GeodesicSample(t=t, point=point, velocity_x=xd0.copy())
    u = t * w
    om_xd0 = omega(spec.alg, spec.theta) @ xd0
    x = t * sin_over(u) * xd0 + t * t * versine_over_sq(u) * om_xd0
    z = 0.5 * float(xd0 @ xd0) * t**3 * arcdefect_over_cube(u) * spec.theta.theta
    vx = math.cos(u) * xd0 + t * sin_over(u) * om_xd0
    return GeodesicSample(t=t, point=GroupPoint(x=x, z=z), velocity_x=vx)


def zdot_full(spec: GeodesicSpec, t: float) -> np.ndarray:
    """Vertical velocity by the raw four-term expression.

    Exists solely as an oracle against ``zdot_closed``; not simplified on
    purpose. Undefined at theta = 0 (the straight-line branch applies).
    """
    w = spec.theta.norm
    if w == 0.0:
        raise ValueError("zdot_full is undefined at theta=0; geodesic is a line")
    xd0 = spec.xdot0
    alg = spec.alg
    Om = omega(alg, spec.theta)
    OmT = Om.T
    u = t * w
    c, s = math.cos(u), math.sin(u)
    ver = 1.0 - c
    out = np.empty(alg.n)
    for k in range(alg.n):
        Ck = alg.C[k]
        M = (
            Ck / w * c * s
            + (Ck @ Om) / w**2 * c * ver
            + (OmT @ Ck) / w**2 * s * s
            + (OmT @ Ck @ Om) / w**3 * s * ver
        )
        out[k] = 0.5 * float(xd0 @ M @ xd0)
    return out


def zdot_closed(spec: GeodesicSpec, t: float) -> np.ndarray:
    """Simplified vertical velocity: theta * |xdot0|^2 (1-cos(tw)) / (2w^2)."""
    w = spec.theta.norm
    u = t * w
    return 0.5 * float(spec.xdot0 @ spec.xdot0) * t * t * versine_over_sq(u) * spec.theta.theta


def geodesic_length(spec: GeodesicSpec, T: float) -> float:
    """Length over [0, T]: constant-speed curve, so T * |xdot0|."""
    if not (math.isfinite(T) and T >= 0.0):
        raise ValueError(f"horizon T must be finite and >= 0, got {T}")
    return T * spec.speed
