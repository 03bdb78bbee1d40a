"""H-type Lie algebra data: structure matrices, brackets, J-maps.

An algebra is determined by the center dimension r and the horizontal
dimension m together with r skew-symmetric m x m matrices C^1..C^r
satisfying

    (C^k)^T = -C^k,   (C^k)^2 = -Id,   C^k C^p = -C^p C^k  (k != p).

Generators are built from 2x2 signed-permutation blocks by Kronecker
products (plus the octonion left-multiplication family for r in 4..7),
so every entry is -1, 0 or +1 and the relations hold exactly in float
arithmetic. Construction never trusts the ladder: ``build_algebra``
re-checks the relations and refuses to return a violating family.

Conventions fixed here and used by every downstream formula:
    bracket_k(v, w) = <C^k v, w>,     j_map(Z, v) = (sum_k Z_k C^k) v,
    omega(theta)    = sum_k theta_k C^k.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "HTypeAlgebra",
    "GroupPoint",
    "Covector",
    "min_module_dim",
    "build_algebra",
    "verify_relations",
    "bracket",
    "j_map",
    "omega",
    "algebra_to_dict",
    "algebra_from_dict",
    "save_algebra",
    "load_algebra",
]

_E = np.eye(2)
_J = np.array([[0.0, -1.0], [1.0, 0.0]])
_K = np.array([[0.0, 1.0], [1.0, 0.0]])
_L = np.array([[1.0, 0.0], [0.0, -1.0]])

# Minimal horizontal dimensions admitting r anticommuting complex
# structures (Radon-Hurwitz pattern), certified at build time.
_MIN_DIM_BASE = (2, 4, 4, 8, 8, 8, 8, 16)


def min_module_dim(r: int) -> int:
    """Smallest horizontal dimension d(r) carrying an r-center family."""
    if r < 1:
        raise ValueError(f"center dimension r must be >= 1, got {r}")
    if r <= 8:
        return _MIN_DIM_BASE[r - 1]
    return 16 * min_module_dim(r - 8)


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class HTypeAlgebra:
    """Structure data (r, m, C) of an H-type algebra; immutable."""

    r: int
    m: int
    C: np.ndarray  # shape (r, m, m)

    def __post_init__(self):
        C = np.asarray(self.C, dtype=np.float64)
        if C.shape != (self.r, self.m, self.m):
            raise ValueError(
                f"structure matrices have shape {C.shape}, expected "
                f"({self.r}, {self.m}, {self.m})"
            )
        object.__setattr__(self, "C", _freeze(C))

    @property
    def n(self) -> int:
        """Vertical (center) dimension; equals r."""
        return self.r


@dataclass(frozen=True, eq=False)
class GroupPoint:
    """Point (x, z) of the group in exponential coordinates."""

    x: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x, dtype=np.float64))
        z = np.atleast_1d(np.asarray(self.z, dtype=np.float64))
        if x.ndim != 1 or z.ndim != 1:
            raise ValueError("x and z must be vectors")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(z))):
            raise ValueError("non-finite coordinates in group point")
        object.__setattr__(self, "x", _freeze(x))
        object.__setattr__(self, "z", _freeze(z))


@dataclass(frozen=True, eq=False)
class Covector:
    """Vertical parameter vector theta with its cached norm."""

    theta: np.ndarray
    norm: float = field(init=False)

    def __post_init__(self):
        th = np.atleast_1d(np.asarray(self.theta, dtype=np.float64))
        if th.ndim != 1:
            raise ValueError("theta must be a vector")
        if not np.all(np.isfinite(th)):
            raise ValueError("non-finite covector entries")
        object.__setattr__(self, "theta", _freeze(th))
        object.__setattr__(self, "norm", float(np.linalg.norm(th)))


def _octonion_mult(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Cayley-Dickson product on R^(2^k); exact on integer inputs."""
    if len(x) == 1:
        return np.array([x[0] * y[0]])
    h = len(x) // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]

    def conj(u):
        return np.concatenate([u[:1], -u[1:]])

    return np.concatenate(
        [
            _octonion_mult(a, c) - _octonion_mult(conj(d), b),
            _octonion_mult(d, a) + _octonion_mult(b, conj(c)),
        ]
    )


def _octonion_family() -> list[np.ndarray]:
    """Left multiplication by the 7 imaginary octonion units on R^8."""
    mats = []
    eye = np.eye(8)
    for i in range(1, 8):
        M = np.empty((8, 8))
        for j in range(8):
            M[:, j] = _octonion_mult(eye[i], eye[j])
        mats.append(M)
    return mats


def _generators(r: int) -> list[np.ndarray]:
    """r anticommuting complex structures on R^d(r), integer entries."""
    if r == 1:
        return [_J.copy()]
    if r <= 3:
        return [np.kron(_J, _E), np.kron(_K, _J), np.kron(_L, _J)][:r]
    if r <= 7:
        return _octonion_family()[:r]
    if r == 8:
        # doubling: L (+1/-1 block signs) commutes with the squares and
        # flips order against J x Id
        return [np.kron(_L, A) for A in _octonion_family()] + [
            np.kron(_J, np.eye(8))
        ]
    # r > 8: tensor the 8-family on R^16 with the (r-8)-family through the
    # volume element, which squares to +Id and anticommutes with each of
    # the eight generators.
    eight = _generators(8)
    omega16 = np.eye(16)
    for B in eight:
        omega16 = omega16 @ B
    base = _generators(r - 8)
    d = base[0].shape[0]
    return [np.kron(B, np.eye(d)) for B in eight] + [
        np.kron(omega16, A) for A in base
    ]


def build_algebra(r: int, m: int) -> HTypeAlgebra:
    """Construct the H-type algebra with center dimension r on R^m.

    m must be a positive multiple of d(r); larger m is realized as
    block-diagonal copies of the minimal module. The returned family is
    certified by ``verify_relations`` (exact zero), never assumed.
    """
    d = min_module_dim(r)
    if m < 1 or m % d != 0:
        raise ValueError(
            f"no H-type algebra with r={r} on R^{m}: m must be a positive "
            f"multiple of d({r})={d}"
        )
    gens = _generators(r)
    copies = m // d
    if copies > 1:
        eye = np.eye(copies)
        gens = [np.kron(eye, A) for A in gens]
    alg = HTypeAlgebra(r=r, m=m, C=np.stack(gens))
    worst = verify_relations(alg)
    if worst != 0.0:
        raise AssertionError(
            f"generator ladder produced an invalid family for r={r}, m={m} "
            f"(violation {worst}); this is a bug"
        )
    return alg


def verify_relations(alg: HTypeAlgebra) -> float:
    """Max-entry residual over all defining relations; 0 means exact."""
    C = alg.C
    eye = np.eye(alg.m)
    worst = 0.0
    for k in range(alg.r):
        worst = max(worst, float(np.abs(C[k] + C[k].T).max()))
        worst = max(worst, float(np.abs(C[k] @ C[k] + eye).max()))
        for p in range(k + 1, alg.r):
            worst = max(worst, float(np.abs(C[k] @ C[p] + C[p] @ C[k]).max()))
    return worst


def _check_horizontal(alg: HTypeAlgebra, v: np.ndarray, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (alg.m,):
        raise ValueError(f"{name} has shape {v.shape}, expected ({alg.m},)")
    return v


def _check_vertical(alg: HTypeAlgebra, Z: np.ndarray, name: str) -> np.ndarray:
    Z = np.asarray(Z, dtype=np.float64)
    if Z.shape != (alg.n,):
        raise ValueError(f"{name} has shape {Z.shape}, expected ({alg.n},)")
    return Z


def bracket(alg: HTypeAlgebra, v, w) -> np.ndarray:
    """Lie bracket of horizontal vectors: component k is <C^k v, w>."""
    v = _check_horizontal(alg, v, "v")
    w = _check_horizontal(alg, w, "w")
    return np.einsum("kji,i,j->k", alg.C, v, w)


def j_map(alg: HTypeAlgebra, Z, v) -> np.ndarray:
    """J_Z v = (sum_k Z_k C^k) v; dual to the bracket."""
    Z = _check_vertical(alg, Z, "Z")
    v = _check_horizontal(alg, v, "v")
    return np.einsum("k,kij,j->i", Z, alg.C, v)


def omega(alg: HTypeAlgebra, theta) -> np.ndarray:
    """The skew-symmetric matrix sum_k theta_k C^k of a covector."""
    th = theta.theta if isinstance(theta, Covector) else theta
    th = _check_vertical(alg, th, "theta")
    return np.einsum("k,kij->ij", th, alg.C)


def algebra_to_dict(alg: HTypeAlgebra) -> dict:
    return {
        "r": alg.r,
        "m": alg.m,
        "C": [[[int(e) for e in row] for row in mat] for mat in alg.C],
    }


def algebra_from_dict(data: dict) -> HTypeAlgebra:
    """Rebuild an algebra from its JSON dict; re-verifies the relations."""
    try:
        r = int(data["r"])
        m = int(data["m"])
        C = np.asarray(data["C"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed algebra data: {exc}") from exc
    alg = HTypeAlgebra(r=r, m=m, C=C)
    worst = verify_relations(alg)
    if worst > 0.0:
        raise ValueError(
            f"algebra data violates the H-type relations (residual {worst})"
        )
    return alg


def save_algebra(alg: HTypeAlgebra, path) -> None:
    worst = verify_relations(alg)
    if worst > 0.0:
        raise ValueError(f"refusing to save invalid algebra (residual {worst})")
    with open(path, "w") as fh:
        json.dump(algebra_to_dict(alg), fh)
        fh.write("\n")


def load_algebra(path) -> HTypeAlgebra:
    with open(path) as fh:
        return algebra_from_dict(json.load(fh))
