"""Dense linear-algebra primitives the circumcenter machinery is built on.

Vectors are 1-D float arrays, matrices 2-D. Collections of vectors are
passed as sequences of 1-D arrays (or an (m, n) array read row-wise).
Rank-style tolerances are relative: thresholds scale with the largest
input column norm, so all decisions are invariant under global scaling.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.linalg import solve_triangular

DEFAULT_RANK_TOL = 1e-10
DEFAULT_PIVOT_TOL = 1e-12


class DimensionMismatch(ValueError):
    """Operands do not share the ambient dimension."""


class NotPositiveDefinite(ValueError):
    """A pivot fell below tolerance during Cholesky factorization."""


def as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    return v


def as_vectors(vectors) -> list[np.ndarray]:
    out = [as_vector(v) for v in vectors]
    if out:
        n = out[0].shape[0]
        for v in out[1:]:
            if v.shape[0] != n:
                raise DimensionMismatch(
                    f"mixed vector lengths {n} and {v.shape[0]}"
                )
    return out


def dot(u, v) -> float:
    """Euclidean inner product of two equal-length vectors."""
    u = as_vector(u)
    v = as_vector(v)
    if u.shape != v.shape:
        raise DimensionMismatch(f"lengths {u.shape[0]} and {v.shape[0]}")
    return float(u @ v)


def norm(v) -> float:
    return float(np.linalg.norm(as_vector(v)))


def gram(vectors) -> np.ndarray:
    """Gram matrix of a nonempty vector list.

    Each entry is computed once and mirrored, so the result is symmetric
    bit-for-bit.
    """
    vs = as_vectors(vectors)
    if not vs:
        raise ValueError("gram of an empty vector list")
    m = len(vs)
    G = np.empty((m, m))
    for i in range(m):
        for j in range(i, m):
            g = float(vs[i] @ vs[j])
            G[i, j] = g
            G[j, i] = g
    return G


def solve_spd(G, rhs, pivot_tol: float = DEFAULT_PIVOT_TOL) -> np.ndarray:
    """Solve G x = rhs for symmetric positive definite G.

    Uses Cholesky with diagonal pivoting; raises NotPositiveDefinite as
    soon as the largest remaining Schur-complement diagonal falls to
    pivot_tol times the largest initial diagonal (absolute fallback for
    an all-zero matrix). Small near-singular Gram matrices are the
    expected failure mode, not an exceptional one.
    """
    G = np.asarray(G, dtype=float)
    b = as_vector(rhs)
    m = G.shape[0]
    if G.shape != (m, m) or b.shape[0] != m:
        raise DimensionMismatch(f"G is {G.shape}, rhs has length {b.shape[0]}")
    if m == 0:
        return np.zeros(0)

    A = G.copy()
    perm = np.arange(m)
    scale = float(np.max(np.abs(np.diag(A)))) if m else 0.0
    threshold = pivot_tol * max(scale, 1e-300)
    for k in range(m):
        p = k + int(np.argmax(np.diag(A)[k:]))
        if A[p, p] <= threshold:
            raise NotPositiveDefinite(
                f"pivot {A[p, p]:.3e} at step {k} below {threshold:.3e}"
            )
        if p != k:
            A[[k, p], :] = A[[p, k], :]
            A[:, [k, p]] = A[:, [p, k]]
            perm[[k, p]] = perm[[p, k]]
        A[k, k] = np.sqrt(A[k, k])
        A[k + 1 :, k] /= A[k, k]
        A[k + 1 :, k + 1 :] -= np.outer(A[k + 1 :, k], A[k + 1 :, k])

    L = np.tril(A)
    y = solve_triangular(L, b[perm], lower=True)
    x = solve_triangular(L.T, y, lower=False)
    out = np.empty(m)
    out[perm] = x
    return out


def max_independent_subset(
    vectors, tol: float = DEFAULT_RANK_TOL
) -> list[int]:
    """Indices of a maximal linearly independent subset, earliest first.

    Vectors are swept in index order; one is kept when its residual
    against the span of the vectors already kept exceeds tol times the
    largest input norm. Every input then lies in the span of the kept
    vectors within that threshold. Zero (and near-zero) vectors are
    skipped.
    """
    vs = as_vectors(vectors)
    if not vs:
        return []
    scale = max(float(np.linalg.norm(v)) for v in vs)
    if scale == 0.0:
        return []
    threshold = tol * scale
    basis: list[np.ndarray] = []
    kept: list[int] = []
    for i, v in enumerate(vs):
        r = v.copy()
        for _ in range(2):  # re-orthogonalize: twice is enough
            for q in basis:
                r -= (r @ q) * q
        rn = float(np.linalg.norm(r))
        if rn > threshold:
            basis.append(r / rn)
            kept.append(i)
    return kept


def orthonormalize(vectors, tol: float = DEFAULT_RANK_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the span via modified Gram-Schmidt.

    Dependent (and zero) vectors are skipped at the same relative
    threshold as max_independent_subset; each kept vector is
    orthogonalized twice so the basis is orthonormal to near machine
    precision.
    """
    vs = as_vectors(vectors)
    if not vs:
        return []
    scale = max(float(np.linalg.norm(v)) for v in vs)
    if scale == 0.0:
        return []
    threshold = tol * scale
    basis: list[np.ndarray] = []
    for v in vs:
        r = v.copy()
        for _ in range(2):
            for q in basis:
                r -= (r @ q) * q
        rn = float(np.linalg.norm(r))
        if rn > threshold:
            basis.append(r / rn)
    return basis


def det_via_factorization(M) -> float:
    """Determinant computed from a pivoted (LU) factorization."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if M.shape[0] == 0:
        return 1.0
    return float(np.linalg.det(M))
