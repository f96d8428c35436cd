"""Problem generation and JSON file formats.

Random instances come from an explicitly specified xorshift64* stream,
so the raw random numbers behind a seed are identical on every platform
and regeneration on one installation is bit-identical; nothing here
depends on numpy's generator state. Files are plain JSON with floats
written in shortest round-trip decimal form, which preserves every bit
on reload.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .affine import from_span
from .solvers import Problem

# xorshift64* constants: shifts 12/25/27, multiplier from the reference
# implementation; seeds are scrambled once through a splitmix64 step so
# that small seeds do not produce correlated leading outputs.
_MASK64 = (1 << 64) - 1
_XORSHIFT_MULT = 0x2545F4914F6CDD1D
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_SPLITMIX_MULT1 = 0xBF58476D1CE4E5B9
_SPLITMIX_MULT2 = 0x94D049BB133111EB


class ParseError(ValueError):
    """A points or problem file failed to parse or validate."""


class Xorshift64Star:
    """Deterministic 64-bit xorshift* generator.

    next_u64: x ^= x >> 12; x ^= x << 25; x ^= x >> 27 (all mod 2^64),
    output (x * 0x2545F4914F6CDD1D) mod 2^64. uniform() maps the top 53
    bits to [0, 1); normals come from the Box-Muller transform.
    """

    def __init__(self, seed: int):
        s = (int(seed) + _SPLITMIX_GAMMA) & _MASK64
        s = ((s ^ (s >> 30)) * _SPLITMIX_MULT1) & _MASK64
        s = ((s ^ (s >> 27)) * _SPLITMIX_MULT2) & _MASK64
        s ^= s >> 31
        self._state = s if s != 0 else _SPLITMIX_GAMMA
        self._spare_normal: float | None = None

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x = (x ^ (x << 25)) & _MASK64
        x ^= x >> 27
        self._state = x
        return (x * _XORSHIFT_MULT) & _MASK64

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def normal(self) -> float:
        if self._spare_normal is not None:
            out = self._spare_normal
            self._spare_normal = None
            return out
        u1 = 1.0 - self.uniform()  # in (0, 1], keeps log finite
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare_normal = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def normal_vector(self, n: int) -> np.ndarray:
        return np.array([self.normal() for _ in range(n)])

    def orthogonal(self, n: int) -> np.ndarray:
        """Random n x n orthogonal matrix (QR of a normal matrix, signs fixed)."""
        M = np.array([[self.normal() for _ in range(n)] for _ in range(n)])
        Q, R = np.linalg.qr(M)
        return Q * np.where(np.diag(R) >= 0.0, 1.0, -1.0)


def generate_two_subspace(
    n: int, dim_u: int, dim_v: int, target_cf: float, seed: int
) -> Problem:
    """Two linear subspaces with a planted Friedrichs angle.

    p = min(dim_u, dim_v) coordinate-plane pairs are rotated apart with
    cosines target_cf * (p - i) / p, so the largest principal-angle
    cosine is exactly target_cf (all angles 90 degrees when it is 0);
    leftover directions are mutually orthogonal. The whole frame is then
    mapped through a seeded random orthogonal matrix and z is standard
    normal. The single-angle construction is avoided on purpose: the
    circumcentered iteration terminates finitely on it, which leaves no
    tail to estimate a rate from.
    """
    if dim_u < 1 or dim_v < 1:
        raise ValueError("subspace dimensions must be at least 1")
    if dim_u + dim_v > n:
        raise ValueError(
            f"dim_u + dim_v = {dim_u + dim_v} exceeds ambient dimension {n}"
        )
    if not 0.0 <= target_cf < 1.0:
        raise ValueError("target Friedrichs cosine must lie in [0, 1)")

    rng = Xorshift64Star(seed)
    Q = rng.orthogonal(n)
    axes = [Q[:, j] for j in range(n)]

    p = min(dim_u, dim_v)
    u_dirs: list[np.ndarray] = []
    v_dirs: list[np.ndarray] = []
    used = 0
    for i in range(p):
        c = target_cf * (p - i) / p
        s = math.sqrt(1.0 - c * c)
        e1, e2 = axes[used], axes[used + 1]
        used += 2
        u_dirs.append(e1)
        v_dirs.append(c * e1 + s * e2)
    for _ in range(dim_u - p):
        u_dirs.append(axes[used])
        used += 1
    for _ in range(dim_v - p):
        v_dirs.append(axes[used])
        used += 1

    zero = np.zeros(n)
    U = from_span(zero, u_dirs)
    V = from_span(zero, v_dirs)
    z = rng.normal_vector(n)
    return Problem([U, V], z)


# ---------------------------------------------------------------------------
# File formats


def _require(cond: bool, msg: str):
    if not cond:
        raise ParseError(msg)


def _as_float_list(obj, where: str, length: int | None = None) -> list[float]:
    _require(isinstance(obj, list), f"{where} must be an array")
    if length is not None:
        _require(
            len(obj) == length, f"{where} has length {len(obj)}, expected {length}"
        )
    out = []
    for i, v in enumerate(obj):
        _require(
            isinstance(v, (int, float)) and not isinstance(v, bool),
            f"{where}[{i}] is not a number",
        )
        out.append(float(v))
    return out


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    _require(isinstance(doc, dict), f"{path}: top level must be an object")
    return doc


def load_points(path: str) -> list[np.ndarray]:
    """Read a point-set file: {"dim": n, "points": [[...], ...]}."""
    doc = _load_json(path)
    _require("dim" in doc, f"{path}: missing field 'dim'")
    _require(
        isinstance(doc["dim"], int) and doc["dim"] >= 1,
        f"{path}: 'dim' must be a positive integer",
    )
    _require("points" in doc, f"{path}: missing field 'points'")
    _require(isinstance(doc["points"], list), f"{path}: 'points' must be an array")
    _require(len(doc["points"]) >= 1, f"{path}: 'points' is empty")
    n = doc["dim"]
    return [
        np.array(_as_float_list(p, f"points[{i}]", n))
        for i, p in enumerate(doc["points"])
    ]


def save_points(path: str, points) -> None:
    pts = [np.asarray(p, dtype=float) for p in points]
    doc = {"dim": int(pts[0].shape[0]), "points": [list(map(float, p)) for p in pts]}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_problem(path: str, intersection_tol: float = 1e-8) -> Problem:
    """Read and validate a problem file.

    {"dim": n, "subspaces": [{"base": [...], "span": [[...], ...]}, ...],
     "z": [...]} with optional "seed" and "description". Spans are
    orthonormalized on load; an empty intersection is a validation
    error.
    """
    doc = _load_json(path)
    for key in ("dim", "subspaces", "z"):
        _require(key in doc, f"{path}: missing field '{key}'")
    n = doc["dim"]
    _require(
        isinstance(n, int) and n >= 1, f"{path}: 'dim' must be a positive integer"
    )
    _require(isinstance(doc["subspaces"], list), f"{path}: 'subspaces' must be an array")
    _require(
        len(doc["subspaces"]) >= 2, f"{path}: need at least two subspaces"
    )
    subspaces = []
    for i, sub in enumerate(doc["subspaces"]):
        where = f"subspaces[{i}]"
        _require(isinstance(sub, dict), f"{path}: {where} must be an object")
        _require("base" in sub, f"{path}: {where} missing field 'base'")
        _require("span" in sub, f"{path}: {where} missing field 'span'")
        base = _as_float_list(sub["base"], f"{where}.base", n)
        _require(isinstance(sub["span"], list), f"{path}: {where}.span must be an array")
        span = [
            np.array(_as_float_list(v, f"{where}.span[{j}]", n))
            for j, v in enumerate(sub["span"])
        ]
        subspaces.append(from_span(np.array(base), span))
    z = np.array(_as_float_list(doc["z"], "z", n))
    try:
        return Problem(subspaces, z, intersection_tol)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def save_problem(
    path: str,
    problem: Problem,
    seed: int | None = None,
    description: str | None = None,
) -> None:
    doc: dict = {"dim": problem.dim}
    if description is not None:
        doc["description"] = description
    if seed is not None:
        doc["seed"] = int(seed)
    doc["subspaces"] = [
        {
            "base": list(map(float, s.base)),
            "span": [list(map(float, q)) for q in s.onb],
        }
        for s in problem.subspaces
    ]
    doc["z"] = list(map(float, problem.z))
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
