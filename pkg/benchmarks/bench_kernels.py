#!/usr/bin/env python3
"""Benchmark the compiled polyline kernels against the numpy fallback.

Times the three operations that dominate brute-force distance searches:
endpoint integration, objective+gradient, and a full descent run.

    python benchmarks/bench_kernels.py [--knots 16] [--repeat 5]
"""
import argparse
import math
import time

import numpy as np

from htype.algebra import build_algebra
from htype.kernels import _purepy

try:
    from htype.kernels import _core
except ImportError:
    _core = None


def timeit(fn, min_time=0.2):
    fn()  # warm up
    n = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(n):
            fn()
        dt = time.perf_counter() - t0
        if dt >= min_time:
            return dt / n
        n = max(n * 2, int(n * min_time / max(dt, 1e-9)))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--knots", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--r", type=int, default=1)
    ap.add_argument("--m", type=int, default=2)
    args = ap.parse_args()

    alg = build_algebra(args.r, args.m)
    rng = np.random.default_rng(0)
    W = np.ascontiguousarray(rng.standard_normal((args.knots, alg.m)))
    W[0] = 0.0
    zt = np.ascontiguousarray(np.full(alg.n, 0.5))
    lam = 1e4

    cases = [
        ("polyline_z", lambda mod: mod.polyline_z(alg.C, W)),
        ("objective_grad", lambda mod: mod.objective_grad(alg.C, W, zt, lam)),
        (
            "descend(600 it)",
            lambda mod: mod.descend(alg.C, W, zt, lam, 0.05, 600, 1e-14),
        ),
    ]

    backends = [("python", _purepy)]
    if _core is not None:
        backends.insert(0, ("compiled", _core))
    else:
        print("note: compiled kernels not built; timing the fallback only\n")

    print(
        f"problem: r={args.r} m={args.m} knots={args.knots} "
        f"(Heisenberg-type descent workload)\n"
    )
    header = f"{'kernel':<16}" + "".join(f"{name:>14}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for case_name, call in cases:
        times = {}
        for bname, mod in backends:
            times[bname] = min(timeit(lambda: call(mod)) for _ in range(args.repeat))
        row = f"{case_name:<16}"
        for bname, _ in backends:
            t = times[bname]
            row += f"{t * 1e6:>12.1f}us"
        if len(backends) == 2:
            row += f"{times['python'] / times['compiled']:>9.1f}x"
        print(row)

    # end-to-end: one brute-force restart bundle per backend
    print()
    for bname, mod in backends:
        t0 = time.perf_counter()
        Wd = W
        for lam_phase in (3e1, 1e3, 1e5, 1e8):
            Wd, _ = mod.descend(alg.C, Wd, zt, lam_phase, 0.05, 600, 1e-14)
        dt = time.perf_counter() - t0
        miss = float(np.linalg.norm(mod.polyline_z(alg.C, Wd) - zt))
        print(
            f"{bname:>9}: 4-phase descent {dt * 1e3:8.2f} ms "
            f"(final z miss {miss:.1e})"
        )


if __name__ == "__main__":
    main()
