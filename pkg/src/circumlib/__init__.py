"""Circumcenters of finite point sets and circumcentered-reflection solvers."""

from .linalg import (
    DimensionMismatch,
    NotPositiveDefinite,
    det_via_factorization,
    dot,
    gram,
    max_independent_subset,
    orthonormalize,
    solve_spd,
)
from .circumcenter import (
    CircumConfig,
    CircumOutcome,
    NotAffinelyIndependent,
    NotThreeDimensional,
    circumcenter,
    circumcenter_cross3,
    circumcenter_gram,
    circumcenter_three,
    circumradius,
    circumradius_cross3,
    cramer_coefficients,
    cross3,
    dedup,
    verify_equidistant,
)
from .affine import (
    AffineSubspace,
    NoIntersection,
    affine_hull,
    distance_to,
    friedrichs_cos,
    from_span,
    intersect,
    project,
    reflect,
)
from .solvers import (
    DegenerateStep,
    InsufficientData,
    Initializer,
    Method,
    Problem,
    SolverConfig,
    SolverTrace,
    cdrm_step,
    crm_step,
    dr_step,
    estimate_rate,
    map_step,
    run,
)
from .problems import (
    ParseError,
    Xorshift64Star,
    generate_two_subspace,
    load_points,
    load_problem,
    save_points,
    save_problem,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSubspace",
    "CircumConfig",
    "CircumOutcome",
    "DegenerateStep",
    "DimensionMismatch",
    "InsufficientData",
    "Initializer",
    "Method",
    "NoIntersection",
    "NotAffinelyIndependent",
    "NotPositiveDefinite",
    "NotThreeDimensional",
    "ParseError",
    "Problem",
    "SolverConfig",
    "SolverTrace",
    "Xorshift64Star",
    "affine_hull",
    "cdrm_step",
    "circumcenter",
    "circumcenter_cross3",
    "circumcenter_gram",
    "circumcenter_three",
    "circumradius",
    "circumradius_cross3",
    "cramer_coefficients",
    "crm_step",
    "cross3",
    "dedup",
    "det_via_factorization",
    "dot",
    "dr_step",
    "distance_to",
    "estimate_rate",
    "friedrichs_cos",
    "from_span",
    "generate_two_subspace",
    "gram",
    "intersect",
    "load_points",
    "load_problem",
    "map_step",
    "max_independent_subset",
    "orthonormalize",
    "project",
    "reflect",
    "run",
    "save_points",
    "save_problem",
    "solve_spd",
    "verify_equidistant",
]
