"""Best approximation onto an intersection of affine subspaces.

Four iterations on a common trace format: circumcentered reflections for
two sets (cdrm) and for m sets (crm), plus Douglas-Rachford (dr) and
cyclic projections (map) as baselines. The reference solution is the
projection of the problem's anchor point z onto the full intersection,
computed once at problem construction.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .affine import (
    AffineSubspace,
    NoIntersection,
    distance_to,
    intersect,
    project,
    reflect,
)
from .circumcenter import CircumConfig, circumcenter
from .linalg import as_vector, orthonormalize

log = logging.getLogger("circumlib.solvers")


class DegenerateStep(RuntimeError):
    """A circumcentering step produced an Empty circumcenter."""


class InsufficientData(ValueError):
    """Too few usable iterations to estimate a convergence rate."""


class Initializer(str, enum.Enum):
    """How the starting point is derived from the anchor z."""

    RAW_Z = "z"
    PROJECT_FIRST_SET = "project-first"
    PROJECT_SUM = "project-sum"


class Method(str, enum.Enum):
    CDRM = "cdrm"
    CRM = "crm"
    DR = "dr"
    MAP = "map"


@dataclass(frozen=True)
class SolverConfig:
    max_iter: int = 1000
    step_tol: float = 1e-12
    sol_tol: float | None = None
    initializer: Initializer = Initializer.PROJECT_FIRST_SET

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.step_tol <= 0:
            raise ValueError("step_tol must be positive")
        if self.sol_tol is not None and self.sol_tol <= 0:
            raise ValueError("sol_tol must be positive when set")


class Problem:
    """m >= 2 affine subspaces with nonempty intersection, plus anchor z.

    The intersection is computed once here (folding pairwise
    intersections) and validated at tolerance 1e-8; the reference
    solution is project(intersection, z).
    """

    def __init__(self, subspaces, z, intersection_tol: float = 1e-8):
        subspaces = list(subspaces)
        if len(subspaces) < 2:
            raise ValueError("a problem needs at least two subspaces")
        z = as_vector(z)
        dims = {s.ambient_dim for s in subspaces}
        if dims != {z.shape[0]}:
            raise ValueError(
                f"ambient dimensions {sorted(dims)} do not all match z (R^{z.shape[0]})"
            )
        self.subspaces: list[AffineSubspace] = subspaces
        self.z = z
        common = subspaces[0]
        for i, s in enumerate(subspaces[1:], start=1):
            try:
                common = intersect(common, s, intersection_tol)
            except NoIntersection as exc:
                prefix = (
                    f"subspaces 0 and {i}"
                    if i == 1
                    else f"the intersection of subspaces 0..{i - 1} and subspace {i}"
                )
                raise NoIntersection(f"{prefix} share no point: {exc}") from exc
        self.intersection: AffineSubspace = common
        self.solution: np.ndarray = project(common, z)

    @property
    def dim(self) -> int:
        return self.z.shape[0]

    @property
    def num_sets(self) -> int:
        return len(self.subspaces)


@dataclass
class SolverTrace:
    """Iterates plus per-iteration diagnostics.

    iterates[0] is the starting point; step_norms[k] = |x_{k+1} - x_k|,
    so len(step_norms) = len(iterates) - 1. dists and residuals cover
    every iterate, measured on the shadow sequence for dr (the raw dr
    iterate does not approach the solution; its shadow does).
    """

    method: Method
    iterates: list[np.ndarray] = field(default_factory=list)
    step_norms: list[float] = field(default_factory=list)
    dists: list[float] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)
    shadows: list[np.ndarray] | None = None
    reason: str = ""

    @property
    def num_steps(self) -> int:
        return len(self.step_norms)

    @property
    def final(self) -> np.ndarray:
        pts = self.shadows if self.shadows is not None else self.iterates
        return pts[-1]


_CC_CFG = CircumConfig()


def _circumcenter_of(points) -> np.ndarray:
    out = circumcenter(points, _CC_CFG)
    if out.is_empty:
        raise DegenerateStep("circumcenter of the reflection set is empty")
    return out.center


def cdrm_step(U: AffineSubspace, V: AffineSubspace, x) -> np.ndarray:
    """Circumcenter of {x, R_U x, R_V R_U x}."""
    x = as_vector(x)
    ru = reflect(U, x)
    return _circumcenter_of([x, ru, reflect(V, ru)])


def crm_step(subspaces, x) -> np.ndarray:
    """Circumcenter of x and its successive reflections through all sets."""
    cur = as_vector(x)
    points = [cur]
    for s in subspaces:
        cur = reflect(s, cur)
        points.append(cur)
    return _circumcenter_of(points)


def dr_step(U: AffineSubspace, V: AffineSubspace, x) -> np.ndarray:
    """Douglas-Rachford: x - P_U x + P_V(2 P_U x - x)."""
    x = as_vector(x)
    pu = project(U, x)
    return x - pu + project(V, 2.0 * pu - x)


def map_step(subspaces, x) -> np.ndarray:
    """One sweep of cyclic projections."""
    cur = as_vector(x)
    for s in subspaces:
        cur = project(s, cur)
    return cur


def _initial_point(problem: Problem, initializer: Initializer) -> np.ndarray:
    if initializer is Initializer.RAW_Z:
        return problem.z.copy()
    if initializer is Initializer.PROJECT_FIRST_SET:
        return project(problem.subspaces[0], problem.z)
    # Projection onto the sum of the direction spaces, anchored at a
    # point known to lie in every subspace.
    directions = [q for s in problem.subspaces for q in s.onb]
    basis = orthonormalize(directions) if directions else []
    n = problem.dim
    onb = np.array(basis) if basis else np.zeros((0, n))
    span_sum = AffineSubspace(base=problem.intersection.base, onb=onb)
    return project(span_sum, problem.z)


def run(
    method: Method | str,
    problem: Problem,
    cfg: SolverConfig = SolverConfig(),
) -> SolverTrace:
    """Iterate the chosen method from the configured starting point.

    Stops on step_tol (successive iterates), on sol_tol against the
    reference solution when configured, or at max_iter. dr traces also
    carry the shadow sequence P_{U_1} x_k and measure distances and
    residuals on it.
    """
    method = Method(method)
    if method in (Method.CDRM, Method.DR) and problem.num_sets != 2:
        raise ValueError(f"{method.value} handles exactly two sets")

    U = problem.subspaces[0]
    V = problem.subspaces[1]
    if method is Method.CDRM:
        step = lambda x: cdrm_step(U, V, x)
    elif method is Method.CRM:
        step = lambda x: crm_step(problem.subspaces, x)
    elif method is Method.DR:
        step = lambda x: dr_step(U, V, x)
    else:
        step = lambda x: map_step(problem.subspaces, x)

    shadowed = method is Method.DR
    solution = problem.solution

    def observe(x: np.ndarray) -> np.ndarray:
        return project(U, x) if shadowed else x

    x = _initial_point(problem, cfg.initializer)
    trace = SolverTrace(method=method, shadows=[] if shadowed else None)
    trace.iterates.append(x)
    obs = observe(x)
    if shadowed:
        trace.shadows.append(obs)
    trace.dists.append(float(np.linalg.norm(obs - solution)))
    trace.residuals.append(
        max(distance_to(s, obs) for s in problem.subspaces)
    )

    reason = "max_iter"
    for k in range(cfg.max_iter):
        x_next = step(x)
        step_norm = float(np.linalg.norm(x_next - x))
        x = x_next
        obs = observe(x)
        trace.iterates.append(x)
        if shadowed:
            trace.shadows.append(obs)
        trace.step_norms.append(step_norm)
        dist = float(np.linalg.norm(obs - solution))
        trace.dists.append(dist)
        trace.residuals.append(
            max(distance_to(s, obs) for s in problem.subspaces)
        )
        log.debug(
            "%s iter %d: step %.3e dist %.3e", method.value, k + 1, step_norm, dist
        )
        if cfg.sol_tol is not None and dist <= cfg.sol_tol:
            reason = "sol_tol"
            break
        if step_norm <= cfg.step_tol:
            reason = "step_tol"
            break
    trace.reason = reason
    log.info(
        "%s finished after %d steps (%s), final dist %.3e",
        method.value,
        trace.num_steps,
        reason,
        trace.dists[-1],
    )
    return trace


def estimate_rate(trace: SolverTrace) -> float:
    """Geometric mean of successive distance ratios over the later half.

    Ratios whose denominator sits below 100 * eps * d_0 are discarded
    (the tail is noise once distances reach machine precision), as are
    ratios with an exactly zero numerator. At least five positive
    distances are required.
    """
    ds = trace.dists
    if not ds or ds[0] <= 0.0:
        raise InsufficientData("starting distance is zero")
    floor = 100.0 * np.finfo(float).eps * ds[0]
    if sum(1 for d in ds if d > floor) < 5:
        raise InsufficientData(
            f"only {sum(1 for d in ds if d > floor)} distances above noise floor"
        )
    start = len(ds) // 2
    logs = []
    for k in range(start, len(ds) - 1):
        if ds[k] >= floor and ds[k + 1] > 0.0:
            logs.append(math.log(ds[k + 1] / ds[k]))
    if not logs:
        raise InsufficientData("no usable ratios in the trace tail")
    return math.exp(sum(logs) / len(logs))
