"""Inversion of the exponential map from the origin.

Targets split into four classes. Vertical points (0, z) are reached by a
sphere of minimizers for every winding count k (|theta| = 2k*pi, squared
length 4*k*pi*|z|), so they form the cut locus. Generic points (x, z) are
reached by finitely many geodesics, one per root of

    mu(|theta|/2) = 4|z| / |x|^2,    mu(a) = a/sin(a)^2 - cot(a),

with squared lengths nu(|theta|_k) * (|x|^2 + 4|z|) where

    nu(a) = a^2 / (2 (1 + a - cos(a) - sin(a))).

The first root lies below 2*pi, all others above, and nu stays below pi
before 2*pi and above pi after, so the first root is the unique
minimizer. Horizontal points (x, 0) admit exactly the straight line.

mu and nu are evaluated through cancellation-free rewrites built on the
guarded quotients in :mod:`htype.numeric`:

    mu(a) = 4 a^3 * arcdefect_over_cube(2a) / sin(a)^2
    nu(a) = 1 / (2 (versine_over_sq(a) + a * arcdefect_over_cube(a)))
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .algebra import Covector, GroupPoint, HTypeAlgebra, omega
from .geodesics import GeodesicSpec, eval_geodesic, geodesic_length
from .numeric import Bracket, arcdefect_over_cube, refine_root, versine_over_sq

__all__ = [
    "TargetClass",
    "Multiplicity",
    "RootEntry",
    "RootSet",
    "ConnectionResult",
    "EndpointVerificationError",
    "DEFAULT_ALPHA_CAP",
    "mu",
    "nu",
    "solve_mu",
    "connect_vertical",
    "connect_generic",
    "connect_horizontal",
    "classify",
    "result_to_dict",
    "validate_result_dict",
]

DEFAULT_ALPHA_CAP = 8.0 * math.pi

_ENDPOINT_TOL = 1e-9
_GRID_POINTS = 1024
_POLE_OFFSET = 1e-7
_TANGENT_BAND = 1e-8


class EndpointVerificationError(RuntimeError):
    """A reconstructed geodesic missed its target beyond tolerance."""


class TargetClass(enum.Enum):
    ORIGIN = "origin"
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    GENERIC = "generic"


class Multiplicity(enum.Enum):
    """How many minimizers reach the target: a finite count, or a whole
    sphere of initial directions (vertical targets)."""

    FINITE = "finite"
    SPHERE_FAMILY = "sphere-family"


def mu(alpha: float) -> float:
    """a/sin(a)^2 - cot(a) with mu(0) = 0; poles at nonzero multiples of pi."""
    if alpha == 0.0:
        return 0.0
    k = round(alpha / math.pi)
    if k != 0 and abs(alpha - k * math.pi) <= 1e-12 * max(1.0, abs(alpha)):
        raise ValueError(f"mu has a pole at {alpha} (multiple of pi)")
    if abs(alpha) < 1e-8:
        return 2.0 * alpha / 3.0
    s = math.sin(alpha)
    return 4.0 * alpha**3 * arcdefect_over_cube(2.0 * alpha) / (s * s)


def nu(alpha: float) -> float:
    """a^2 / (2(1 + a - cos a - sin a)) with nu(0) = 1."""
    if alpha < 0.0:
        raise ValueError(f"nu expects alpha >= 0, got {alpha}")
    return 1.0 / (2.0 * (versine_over_sq(alpha) + alpha * arcdefect_over_cube(alpha)))


@dataclass(frozen=True)
class RootEntry:
    """One solution |theta| of the mu equation with its provenance."""

    theta_abs: float
    alpha: float
    bracket_lo: float
    bracket_hi: float
    residual: float
    near_tangent: bool


@dataclass(frozen=True)
class RootSet:
    target_ratio: float
    roots: tuple[RootEntry, ...]


def _interval_minimum(f, lo: float, hi: float, iters: int = 200):
    """Golden-section minimum of a unimodal-enough f on [lo, hi]."""
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if b - a < 1e-13 * max(1.0, abs(b)):
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def solve_mu(target_ratio: float, alpha_cap: float = DEFAULT_ALPHA_CAP) -> RootSet:
    """All solutions alpha of mu(alpha) = target_ratio in (0, alpha_cap),
    returned as |theta| = 2*alpha.

    On the first branch (0, pi) mu rises monotonically from 0 to +inf, so
    a sign scan finds the single root. Interior intervals (n*pi, (n+1)*pi)
    blow up at both ends, so the refined interior minimum decides between
    no roots and a pair, and pairs barely below the target are flagged
    near-tangent. Bisection runs to 1e-15 relative width (well past the
    1e-13 isolation requirement) so residuals stay at float resolution.
    """
    if not (math.isfinite(target_ratio) and target_ratio > 0.0):
        raise ValueError(
            f"target ratio must be positive (got {target_ratio}); "
            "z = 0 targets take the horizontal branch"
        )
    if not (math.isfinite(alpha_cap) and alpha_cap > 0.0):
        raise ValueError(f"alpha_cap must be positive, got {alpha_cap}")

    def f(a: float) -> float:
        return mu(a) - target_ratio

    entries: list[RootEntry] = []

    def add_root(lo_b, hi_b, flo, fhi, near_tangent):
        b = Bracket(lo=float(lo_b), hi=float(hi_b), f_lo=float(flo), f_hi=float(fhi))
        root = refine_root(f, b, tol=1e-15 * max(1.0, hi_b))
        entries.append(
            RootEntry(
                theta_abs=2.0 * root,
                alpha=root,
                bracket_lo=float(lo_b),
                bracket_hi=float(hi_b),
                residual=abs(f(root)),
                near_tangent=near_tangent,
            )
        )

    n_intervals = int(math.ceil(alpha_cap / math.pi))
    for n in range(n_intervals):
        if n == 0:
            # keep the left end below the root even for tiny ratios,
            # where the root sits near 1.5 * ratio
            lo = min(_POLE_OFFSET, max(0.1 * target_ratio, 1e-300))
        else:
            lo = n * math.pi + _POLE_OFFSET
        full_hi = (n + 1) * math.pi - _POLE_OFFSET
        hi = min(full_hi, alpha_cap)
        if hi <= lo:
            continue
        clipped = hi < full_hi
        grid = np.linspace(lo, hi, _GRID_POINTS)
        vals = np.array([f(a) for a in grid])

        if n == 0 or clipped:
            # plain sign scan; on a cap-clipped tail tangency detection is
            # not attempted (the truncation is advisory anyway)
            found = False
            for i in np.nonzero(np.signbit(vals[:-1]) != np.signbit(vals[1:]))[0]:
                add_root(grid[i], grid[i + 1], vals[i], vals[i + 1], False)
                found = True
            if n == 0 and not found:
                if clipped and vals[-1] < 0.0:
                    raise ValueError(
                        f"alpha_cap={alpha_cap} cuts off the first root; "
                        "use a cap of at least pi"
                    )
                raise AssertionError(
                    "no root on the first branch for a positive ratio; "
                    "mu sweeps (0, inf) there"
                )
            continue

        # interior interval: locate the minimum, then bracket around it
        i_min = int(np.argmin(vals))
        a_lo = grid[max(i_min - 1, 0)]
        a_hi = grid[min(i_min + 1, len(grid) - 1)]
        x_min, f_min = _interval_minimum(f, a_lo, a_hi)
        if vals[i_min] < f_min:
            x_min, f_min = float(grid[i_min]), float(vals[i_min])
        if f_min >= 0.0:
            continue
        near_tangent = abs(f_min) <= _TANGENT_BAND
        add_root(lo, x_min, vals[0], f_min, near_tangent)
        add_root(x_min, hi, f_min, vals[-1], near_tangent)

    entries.sort(key=lambda e: e.alpha)
    return RootSet(target_ratio=float(target_ratio), roots=tuple(entries))


def connect_vertical(
    alg: HTypeAlgebra,
    z,
    k_max: int,
    direction,
) -> list[tuple[GeodesicSpec, float]]:
    """Geodesics from the origin to (0, z) with winding counts 1..k_max
    along a chosen unit initial direction. |theta| = 2*k*pi forces the
    horizontal loop closed; squared length is 4*k*pi*|z|."""
    z = np.asarray(z, dtype=np.float64)
    direction = np.asarray(direction, dtype=np.float64)
    z_norm = float(np.linalg.norm(z))
    if z_norm == 0.0:
        raise ValueError("vertical target must have z != 0")
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if abs(float(np.linalg.norm(direction)) - 1.0) > 1e-12:
        raise ValueError("direction must be a unit horizontal vector")
    out = []
    for k in range(1, k_max + 1):
        speed_sq = 4.0 * k * math.pi * z_norm
        xdot0 = math.sqrt(speed_sq) * direction
        theta = Covector(8.0 * k * k * math.pi * math.pi / speed_sq * z)
        spec = GeodesicSpec(alg=alg, xdot0=xdot0, theta=theta)
        out.append((spec, geodesic_length(spec, 1.0)))
    return out


@dataclass(frozen=True, eq=False)
class ConnectionResult:
    """Every geodesic from the origin to the target, with the verdict."""

    target: GroupPoint
    target_class: TargetClass
    geodesics: tuple[tuple[GeodesicSpec, float], ...]
    minimizer_indices: tuple[int, ...]
    distance: float
    in_cut_locus: bool
    multiplicity: Multiplicity
    roots: RootSet | None = None


def _x_cot_x(w: float) -> float:
    """w * cot(w), equal to 1 at w=0 (no cancellation for small w)."""
    if abs(w) < 1e-8:
        return 1.0 - w * w / 3.0
    return w * math.cos(w) / math.sin(w)


def _verify_endpoint(spec: GeodesicSpec, target: GroupPoint, scale: float) -> None:
    end = eval_geodesic(spec, 1.0).point
    err = max(
        float(np.max(np.abs(end.x - target.x))),
        float(np.max(np.abs(end.z - target.z))),
    )
    if err > _ENDPOINT_TOL * max(1.0, scale):
        raise EndpointVerificationError(
            f"reconstructed geodesic misses the target by {err:.3e} "
            f"(|theta|={spec.theta.norm}); root or reconstruction bug"
        )


def connect_generic(
    alg: HTypeAlgebra,
    target: GroupPoint,
    alpha_cap: float = DEFAULT_ALPHA_CAP,
) -> ConnectionResult:
    """All geodesics to a target with x != 0 and z != 0 (within the root
    cap). theta is parallel to z with norm |theta|_k; xdot0 comes from
    inverting the horizontal endpoint map via the trig matrix identity."""
    x = np.asarray(target.x, dtype=np.float64)
    z = np.asarray(target.z, dtype=np.float64)
    x_norm = float(np.linalg.norm(x))
    z_norm = float(np.linalg.norm(z))
    if x_norm == 0.0 or z_norm == 0.0:
        raise ValueError("generic targets need both x != 0 and z != 0")

    ratio = 4.0 * z_norm / (x_norm * x_norm)
    roots = solve_mu(ratio, alpha_cap)
    scale = max(x_norm, z_norm)

    geos: list[tuple[GeodesicSpec, float]] = []
    for entry in roots.roots:
        w = entry.theta_abs
        theta = Covector((w / z_norm) * z)
        Om = omega(alg, theta)
        xdot0 = _x_cot_x(0.5 * w) * x - 0.5 * (Om @ x)
        spec = GeodesicSpec(alg=alg, xdot0=xdot0, theta=theta)
        _verify_endpoint(spec, target, scale)
        geos.append((spec, geodesic_length(spec, 1.0)))

    return ConnectionResult(
        target=target,
        target_class=TargetClass.GENERIC,
        geodesics=tuple(geos),
        minimizer_indices=(0,),
        distance=geos[0][1],
        in_cut_locus=False,
        multiplicity=Multiplicity.FINITE,
        roots=roots,
    )


def connect_horizontal(alg: HTypeAlgebra, x) -> ConnectionResult:
    """The unique geodesic to (x, 0): the straight line with theta = 0."""
    x = np.asarray(x, dtype=np.float64)
    x_norm = float(np.linalg.norm(x))
    if x_norm == 0.0:
        raise ValueError("horizontal target must have x != 0")
    spec = GeodesicSpec(alg=alg, xdot0=x, theta=Covector(np.zeros(alg.n)))
    return ConnectionResult(
        target=GroupPoint(x=x, z=np.zeros(alg.n)),
        target_class=TargetClass.HORIZONTAL,
        geodesics=((spec, x_norm),),
        minimizer_indices=(0,),
        distance=x_norm,
        in_cut_locus=False,
        multiplicity=Multiplicity.FINITE,
    )


def _vertical_witness_directions(m: int) -> list[np.ndarray]:
    e1 = np.zeros(m)
    e1[0] = 1.0
    e2 = np.zeros(m)
    e2[1] = 1.0
    return [e1, -e1, e2]


def classify(
    alg: HTypeAlgebra,
    target: GroupPoint,
    alpha_cap: float = DEFAULT_ALPHA_CAP,
    k_max: int = 3,
) -> ConnectionResult:
    """Dispatch on the target class and assemble the cut-locus verdict.

    The vertical class carries a whole sphere of minimizers; it is
    represented by witness directions (+e1, -e1, e2), each with winding
    counts 1..k_max, minimizers being the k=1 entries.
    """
    x = np.asarray(target.x, dtype=np.float64)
    z = np.asarray(target.z, dtype=np.float64)
    if x.shape != (alg.m,) or z.shape != (alg.n,):
        raise ValueError("target dimensions do not match the algebra")
    x_norm = float(np.linalg.norm(x))
    z_norm = float(np.linalg.norm(z))
    scale = max(x_norm, z_norm)
    eps = 1e-12 * scale

    if scale == 0.0:
        trivial = GeodesicSpec(
            alg=alg, xdot0=np.zeros(alg.m), theta=Covector(np.zeros(alg.n))
        )
        return ConnectionResult(
            target=target,
            target_class=TargetClass.ORIGIN,
            geodesics=((trivial, 0.0),),
            minimizer_indices=(0,),
            distance=0.0,
            in_cut_locus=False,
            multiplicity=Multiplicity.FINITE,
        )
    if x_norm <= eps:
        geos: list[tuple[GeodesicSpec, float]] = []
        minimizers: list[int] = []
        for d in _vertical_witness_directions(alg.m):
            fam = connect_vertical(alg, z, k_max, d)
            minimizers.append(len(geos))  # the k=1 entry of this family
            geos.extend(fam)
        return ConnectionResult(
            target=target,
            target_class=TargetClass.VERTICAL,
            geodesics=tuple(geos),
            minimizer_indices=tuple(minimizers),
            distance=math.sqrt(4.0 * math.pi * z_norm),
            in_cut_locus=True,
            multiplicity=Multiplicity.SPHERE_FAMILY,
        )
    if z_norm <= eps:
        return connect_horizontal(alg, x)
    return connect_generic(alg, target, alpha_cap)


def result_to_dict(res: ConnectionResult) -> dict:
    """JSON-ready dict: target, class, distance, cut-locus flag, geodesics."""
    mins = set(res.minimizer_indices)
    return {
        "target": {"x": res.target.x.tolist(), "z": res.target.z.tolist()},
        "class": res.target_class.value,
        "distance": res.distance,
        "in_cut_locus": res.in_cut_locus,
        "multiplicity": res.multiplicity.value,
        "geodesics": [
            {
                "theta": spec.theta.theta.tolist(),
                "xdot0": spec.xdot0.tolist(),
                "length": length,
                "is_minimizer": i in mins,
            }
            for i, (spec, length) in enumerate(res.geodesics)
        ],
    }


def validate_result_dict(data: dict) -> None:
    """Re-validate a parsed result dict; raises ValueError on violations."""
    try:
        x = np.asarray(data["target"]["x"], dtype=float)
        z = np.asarray(data["target"]["z"], dtype=float)
        cls = TargetClass(data["class"])
        dist = float(data["distance"])
        in_cut = bool(data["in_cut_locus"])
        Multiplicity(data["multiplicity"])
        geos = data["geodesics"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed connection result: {exc}") from exc
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(z))):
        raise ValueError("non-finite target")
    if dist < 0.0:
        raise ValueError("negative distance")
    lengths = [float(g["length"]) for g in geos]
    flags = [bool(g["is_minimizer"]) for g in geos]
    if lengths:
        if abs(min(lengths) - dist) > 1e-9 * max(1.0, dist):
            raise ValueError("distance is not the minimum geodesic length")
        if not any(flags):
            raise ValueError("no geodesic flagged as minimizer")
    if cls is TargetClass.VERTICAL and not in_cut:
        raise ValueError("vertical targets lie in the cut locus")
    if cls is not TargetClass.VERTICAL and in_cut:
        raise ValueError("only vertical targets lie in the cut locus")
