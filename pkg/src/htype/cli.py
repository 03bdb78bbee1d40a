"""Command-line surface.

Subcommands: build (construct and persist an algebra), geodesic (sample a
geodesic to CSV or JSON), connect (solve the connection problem for a
target point), figures (emit plot data for the mu / nu / sinc profiles).

Exit codes: 0 success, 2 validation error, 3 numerical failure (endpoint
verification miss).
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .algebra import Covector, GroupPoint, build_algebra, load_algebra, save_algebra
from .connect import (
    DEFAULT_ALPHA_CAP,
    EndpointVerificationError,
    classify,
    mu,
    nu,
    result_to_dict,
)
from .geodesics import GeodesicSpec, eval_geodesic
from .numeric import sinc_like

_FIGURE_DEFAULTS = {
    "mu": 16.0 * math.pi,
    "nu": 30.0,
    "sinc": 10.0,
}
_POLE_BLANK_EPS = 1e-9


def _parse_vector(text: str, name: str) -> np.ndarray:
    try:
        vec = np.array([float(p) for p in text.split(",") if p.strip() != ""])
    except ValueError as exc:
        raise ValueError(f"cannot parse {name}={text!r}: {exc}") from exc
    if vec.size == 0:
        raise ValueError(f"{name} must contain at least one entry")
    return vec


def _fmt(x: float) -> str:
    return repr(float(x))


def cmd_build(args) -> int:
    alg = build_algebra(args.r, args.m)
    save_algebra(alg, args.out)
    print(f"wrote algebra r={alg.r} m={alg.m} to {args.out}")
    return 0


def cmd_geodesic(args) -> int:
    alg = load_algebra(args.alg)
    xdot0 = _parse_vector(args.xdot0, "--xdot0")
    theta = _parse_vector(args.theta, "--theta")
    if args.samples < 2:
        raise ValueError("--samples must be at least 2")
    spec = GeodesicSpec(alg=alg, xdot0=xdot0, theta=Covector(theta))
    ts = np.linspace(0.0, 1.0, args.samples)
    samples = [eval_geodesic(spec, float(t)) for t in ts]

    if args.format == "json":
        payload = {
            "spec": {
                "r": alg.r,
                "m": alg.m,
                "xdot0": spec.xdot0.tolist(),
                "theta": spec.theta.theta.tolist(),
            },
            "samples": [
                {
                    "t": s.t,
                    "x": s.point.x.tolist(),
                    "z": s.point.z.tolist(),
                    "speed": float(np.linalg.norm(s.velocity_x)),
                }
                for s in samples
            ],
        }
        print(json.dumps(payload, indent=2))
        return 0

    header = (
        ["t"]
        + [f"x_{i + 1}" for i in range(alg.m)]
        + [f"z_{k + 1}" for k in range(alg.n)]
        + ["speed"]
    )
    lines = [",".join(header)]
    for s in samples:
        row = (
            [_fmt(s.t)]
            + [_fmt(v) for v in s.point.x]
            + [_fmt(v) for v in s.point.z]
            + [_fmt(np.linalg.norm(s.velocity_x))]
        )
        lines.append(",".join(row))
    print("\n".join(lines))
    return 0


def cmd_connect(args) -> int:
    alg = load_algebra(args.alg)
    x = _parse_vector(args.x, "--x")
    z = _parse_vector(args.z, "--z")
    target = GroupPoint(x=x, z=z)
    result = classify(alg, target, alpha_cap=args.alpha_cap)
    print(json.dumps(result_to_dict(result), indent=2))
    return 0


def _figure_rows(which: str, upper: float, points: int):
    grid = np.linspace(0.0, upper, points)
    if which == "nu":
        # guarantee the anchor point (2*pi, pi) is present
        two_pi = 2.0 * math.pi
        if upper >= two_pi and not np.any(np.abs(grid - two_pi) < 1e-15):
            grid = np.sort(np.append(grid, two_pi))
    rows = []
    for a in grid:
        a = float(a)
        if which == "mu":
            # abscissa is |theta|; poles of mu(|theta|/2) sit at 2*n*pi
            k = round(a / (2.0 * math.pi))
            if k != 0 and abs(a - 2.0 * math.pi * k) <= _POLE_BLANK_EPS:
                rows.append((a, None))
            else:
                rows.append((a, mu(0.5 * a)))
        elif which == "nu":
            rows.append((a, nu(a)))
        else:
            rows.append((a, sinc_like(2.0 * a)))
    return rows


def cmd_figures(args) -> int:
    which = args.which
    upper = args.max if args.max is not None else _FIGURE_DEFAULTS[which]
    if upper <= 0.0:
        raise ValueError("--max must be positive")
    if args.points < 2:
        raise ValueError("--points must be at least 2")
    names = {
        # mu data is tabulated against |theta| (poles at 2*n*pi), not alpha
        "mu": ("theta_abs", "mu_of_half_theta"),
        "nu": ("alpha", "nu"),
        "sinc": ("alpha", "sin_2a_over_2a"),
    }
    rows = _figure_rows(which, upper, args.points)
    lines = [",".join(names[which])]
    for a, v in rows:
        lines.append(f"{_fmt(a)}," + ("" if v is None else _fmt(v)))
    text = "\n".join(lines) + "\n"
    with open(args.out, "w") as fh:
        fh.write(text)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="htype",
        description=(
            "H-type Carnot groups: algebras, sub-Riemannian geodesics, "
            "connection problems, cut-locus classification, figure data"
        ),
    )
    sub = p.add_subparsers(dest="subcommand", required=True)

    b = sub.add_parser("build", help="construct an algebra and write it as JSON")
    b.add_argument("--r", type=int, required=True, help="center dimension")
    b.add_argument("--m", type=int, required=True, help="horizontal dimension")
    b.add_argument("--out", required=True, help="output JSON path")
    b.set_defaults(func=cmd_build)

    g = sub.add_parser("geodesic", help="sample a geodesic on a uniform t-grid")
    g.add_argument("--alg", required=True, help="algebra JSON path")
    g.add_argument("--xdot0", required=True, help="initial velocity, comma-separated")
    g.add_argument("--theta", required=True, help="covector, comma-separated")
    g.add_argument("--samples", type=int, default=101, help="grid size (>= 2)")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.set_defaults(func=cmd_geodesic)

    c = sub.add_parser("connect", help="solve the connection problem for a target")
    c.add_argument("--alg", required=True, help="algebra JSON path")
    c.add_argument("--x", required=True, help="horizontal target, comma-separated")
    c.add_argument("--z", required=True, help="vertical target, comma-separated")
    c.add_argument(
        "--alpha-cap",
        type=float,
        default=DEFAULT_ALPHA_CAP,
        dest="alpha_cap",
        help="root search cap in the half-angle variable (default 8*pi)",
    )
    c.set_defaults(func=cmd_connect)

    f = sub.add_parser("figures", help="emit CSV data for the mu/nu/sinc profiles")
    f.add_argument("--which", choices=("mu", "nu", "sinc"), required=True)
    f.add_argument("--max", type=float, default=None, help="upper end of the grid")
    f.add_argument("--points", type=int, default=2000, help="grid size (>= 2)")
    f.add_argument("--out", required=True, help="output CSV path")
    f.set_defaults(func=cmd_figures)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EndpointVerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
