"""Circumcenters and circumradii of finite point sets in R^n.

The circumcenter of a finite set S, when it exists, is the unique point
of the affine hull of S equidistant from every point of S; the
circumradius is that common distance. Both are partial: a set with no
equidistant point in its hull has outcome Empty and radius +inf. Empty
is a value, not an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DimensionMismatch,
    NotPositiveDefinite,
    as_vector,
    as_vectors,
    det_via_factorization,
    gram,
    max_independent_subset,
    solve_spd,
)

DEFAULT_DEDUP_TOL_REL = 1e-9


class NotAffinelyIndependent(ValueError):
    """The points do not form an affinely independent tuple."""


class NotThreeDimensional(ValueError):
    """Cross-product routines require ambient dimension exactly 3."""


@dataclass(frozen=True)
class CircumConfig:
    """Tolerances for the total circumcenter routine.

    rank_tol drives the affine-independence and dedup decisions
    (relative); verify_tol drives the final equidistance check
    (relative to 1 + the largest distance).
    """

    rank_tol: float = 1e-10
    verify_tol: float = 1e-8

    def __post_init__(self):
        if self.rank_tol <= 0 or self.verify_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class CircumOutcome:
    """Either Exists(center, radius) or Empty (center None, radius inf)."""

    center: np.ndarray | None
    radius: float

    @classmethod
    def exists(cls, center: np.ndarray, radius: float) -> "CircumOutcome":
        return cls(center=center, radius=float(radius))

    @classmethod
    def empty(cls) -> "CircumOutcome":
        return cls(center=None, radius=math.inf)

    @property
    def is_empty(self) -> bool:
        return self.center is None


def diameter(points) -> float:
    pts = as_vectors(points)
    d = 0.0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = max(d, float(np.linalg.norm(pts[i] - pts[j])))
    return d


def dedup(points, tol: float | None = None) -> list[np.ndarray]:
    """Drop points within tol of an earlier one; order preserved.

    Default tol is 1e-9 * (1 + diameter), so exact duplicates always
    collapse and distinct points at any scale survive.
    """
    pts = as_vectors(points)
    if tol is None:
        tol = DEFAULT_DEDUP_TOL_REL * (1.0 + diameter(pts))
    kept: list[np.ndarray] = []
    for p in pts:
        if all(float(np.linalg.norm(p - q)) > tol for q in kept):
            kept.append(p)
    return kept


def circumcenter_gram(points, pivot_tol: float | None = None) -> np.ndarray:
    """Circumcenter of an affinely independent tuple via the Gram system.

    With differences d_i = x_{i+1} - x_1, solves
    G(d_1..d_{m-1}) alpha = (1/2)(||d_i||^2)_i and returns
    x_1 + sum_i alpha_i d_i. Affine dependence surfaces as
    NotAffinelyIndependent (the Gram matrix fails its Cholesky pivots).
    """
    pts = as_vectors(points)
    if not pts:
        raise ValueError("circumcenter of an empty tuple")
    if len(pts) == 1:
        return pts[0].copy()
    base = pts[0]
    diffs = [p - base for p in pts[1:]]
    G = gram(diffs)
    rhs = 0.5 * np.array([float(d @ d) for d in diffs])
    try:
        if pivot_tol is None:
            alpha = solve_spd(G, rhs)
        else:
            alpha = solve_spd(G, rhs, pivot_tol=pivot_tol)
    except NotPositiveDefinite as exc:
        raise NotAffinelyIndependent(str(exc)) from exc
    return base + np.array(diffs).T @ alpha


def verify_equidistant(p, points, tol: float) -> bool:
    """True when max and min distances from p to the points agree.

    The spread is compared against tol * (1 + max distance).
    """
    p = as_vector(p)
    pts = as_vectors(points)
    if not pts:
        raise ValueError("no points to verify against")
    if pts[0].shape != p.shape:
        raise DimensionMismatch(
            f"point has length {p.shape[0]}, set has length {pts[0].shape[0]}"
        )
    dists = [float(np.linalg.norm(p - q)) for q in pts]
    hi, lo = max(dists), min(dists)
    return hi - lo <= tol * (1.0 + hi)


def circumcenter(points, cfg: CircumConfig = CircumConfig()) -> CircumOutcome:
    """Total circumcenter: Exists(center, radius) or Empty, never an error.

    Deduplicates, reduces to a maximal affinely independent subset with
    the same hull, solves the Gram system there, then verifies the
    candidate against every point. Any degeneracy yields Empty.
    """
    pts = as_vectors(points)
    if not pts:
        raise ValueError("circumcenter of an empty point set")
    distinct = dedup(pts, cfg.rank_tol * (1.0 + diameter(pts)))
    if len(distinct) == 1:
        return CircumOutcome.exists(distinct[0].copy(), 0.0)
    base = distinct[0]
    diffs = [p - base for p in distinct[1:]]
    kept = max_independent_subset(diffs, cfg.rank_tol)
    subset = [base] + [distinct[i + 1] for i in kept]
    try:
        candidate = circumcenter_gram(subset)
    except NotAffinelyIndependent:
        return CircumOutcome.empty()
    if not verify_equidistant(candidate, distinct, cfg.verify_tol):
        return CircumOutcome.empty()
    radius = float(
        np.mean([np.linalg.norm(candidate - q) for q in distinct])
    )
    return CircumOutcome.exists(candidate, radius)


def circumradius(points, cfg: CircumConfig = CircumConfig()) -> float:
    """Common distance to the points, +inf when the circumcenter is Empty."""
    return circumcenter(points, cfg).radius


def circumcenter_three(x, y, z, cfg: CircumConfig = CircumConfig()) -> CircumOutcome:
    """Closed-form circumcenter of up to three points in any dimension.

    After dedup: one point is its own center; two distinct points have
    the midpoint; three affinely independent points use the closed form

        ( ||y-z||^2 <x-z, x-y> x + ||x-z||^2 <y-z, y-x> y
          + ||x-y||^2 <z-x, z-y> z ) / K,
        K = 2 (||y-x||^2 ||z-x||^2 - <y-x, z-x>^2),

    and three distinct collinear points are Empty. K is twice the Gram
    determinant of the differences, so K <= 0 (up to tolerance) is the
    dependence test.
    """
    x, y, z = as_vectors([x, y, z])
    distinct = dedup(
        [x, y, z], cfg.rank_tol * (1.0 + diameter([x, y, z]))
    )
    if len(distinct) == 1:
        return CircumOutcome.exists(distinct[0].copy(), 0.0)
    if len(distinct) == 2:
        center = 0.5 * (distinct[0] + distinct[1])
        return CircumOutcome.exists(
            center, float(np.linalg.norm(center - distinct[0]))
        )
    a = y - x
    b = z - x
    na2 = float(a @ a)
    nb2 = float(b @ b)
    # Dependence test and denominator via the residual of b against a:
    # ||r||^2 * ||a||^2 equals the Gram determinant exactly but does not
    # drown small angles in the eps * ||a||^2 ||b||^2 noise floor of the
    # squared form.
    r = b - (float(a @ b) / na2) * a
    nr2 = float(r @ r)
    if math.sqrt(nr2) <= cfg.rank_tol * math.sqrt(nb2):
        return CircumOutcome.empty()
    K = 2.0 * na2 * nr2
    wx = float((y - z) @ (y - z)) * float((x - z) @ (x - y))
    wy = float((x - z) @ (x - z)) * float((y - z) @ (y - x))
    wz = float((x - y) @ (x - y)) * float((z - x) @ (z - y))
    center = (wx * x + wy * y + wz * z) / K
    radius = float(
        np.mean([np.linalg.norm(center - q) for q in (x, y, z)])
    )
    return CircumOutcome.exists(center, radius)


def cross3(u, v) -> np.ndarray:
    """Cross product in R^3."""
    u = as_vector(u)
    v = as_vector(v)
    if u.shape[0] != 3 or v.shape[0] != 3:
        raise NotThreeDimensional(
            f"cross product needs length-3 vectors, got {u.shape[0]} and {v.shape[0]}"
        )
    return np.array(
        [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ]
    )


def _cross3_frame(x, y, z, tol: float):
    x, y, z = as_vectors([x, y, z])
    if x.shape[0] != 3:
        raise NotThreeDimensional(
            f"cross-product circumcenter needs R^3, got R^{x.shape[0]}"
        )
    a = y - x
    b = z - x
    k = cross3(a, b)
    nk = float(np.linalg.norm(k))
    if nk <= tol * float(np.linalg.norm(a)) * float(np.linalg.norm(b)):
        raise NotAffinelyIndependent(
            "cross product of the differences is (near) zero"
        )
    return x, a, b, k, nk


def circumcenter_cross3(x, y, z, tol: float = 1e-10) -> np.ndarray:
    """Circumcenter of three affinely independent points in R^3.

    center = x + ((||a||^2 b - ||b||^2 a) x (a x b)) / (2 ||a x b||^2)
    with a = y - x, b = z - x.
    """
    x, a, b, k, nk = _cross3_frame(x, y, z, tol)
    w = float(a @ a) * b - float(b @ b) * a
    return x + cross3(w, k) / (2.0 * nk * nk)


def circumradius_cross3(x, y, z, tol: float = 1e-10) -> float:
    """Circumradius of three affinely independent points in R^3.

    radius = ||a|| ||b|| ||a - b|| / (2 ||a x b||), i.e. the opposite
    side over twice the sine of the enclosed angle.
    """
    _, a, b, _, nk = _cross3_frame(x, y, z, tol)
    return (
        float(np.linalg.norm(a))
        * float(np.linalg.norm(b))
        * float(np.linalg.norm(a - b))
        / (2.0 * nk)
    )


def cramer_coefficients(points, base_index: int = 0) -> list[float]:
    """Affine coefficients of the circumcenter by determinant ratios.

    Rebasing at points[base_index] with differences d_i (the other
    points in original order), coefficient i is det(A_i) / (2 det(A))
    where A is the Gram matrix of the d_i and A_i is A with column i
    replaced by (||d_i||^2)_i. The center is then
    points[base_index] + sum_i coeff_i d_i. Independent of the Cholesky
    path, which makes this a cross-check route, not a fast one.
    """
    pts = as_vectors(points)
    m = len(pts)
    if m < 2:
        raise ValueError("need at least two points")
    if not 0 <= base_index < m:
        raise ValueError(f"base_index {base_index} out of range for {m} points")
    base = pts[base_index]
    diffs = [p - base for i, p in enumerate(pts) if i != base_index]
    A = gram(diffs)
    a = np.array([float(d @ d) for d in diffs])
    delta = det_via_factorization(A)
    if delta <= 1e-13 * max(float(np.prod(np.diag(A))), 1e-300):
        raise NotAffinelyIndependent(
            f"Gram determinant {delta:.3e} is not positive"
        )
    coeffs = []
    for i in range(m - 1):
        Ai = A.copy()
        Ai[:, i] = a
        coeffs.append(det_via_factorization(Ai) / (2.0 * delta))
    return coeffs
