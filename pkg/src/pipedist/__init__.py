"""Bounds on the Skorokhod variation distance between flowpipes given as
sequences of polytope reach-set samples.

The pipeline: lift the timed samples into time-explicit polytope pipes,
compute free-space boundaries of the parameter square with linear
programming, decide threshold questions by monotone reachability, and
binary-search the thresholds into a (beta_min, beta_max) sandwich of the
tracepipe variation distance.
"""

from .distance import (
    DistanceBounds,
    compute_bounds,
    coarse_upper_bound,
    decide_min,
    decide_var,
)
from .errors import (
    BudgetExceededError,
    DegeneratePipesError,
    DimensionMismatchError,
    EmptyPolytopeError,
    InfeasibleRegionError,
    LambdaOutOfRangeError,
    NumericalFailureError,
    ParameterOutOfRangeError,
    ParseError,
    PipedistError,
    UnboundedNormError,
    UnboundedPolytopeError,
    ValidationError,
)
from .freespace import (
    BoundaryCache,
    EdgeInterval,
    FreeSpaceBoundary,
    PhiKind,
    build_boundary,
    edge_interval_max,
    edge_interval_min,
    free_at,
    phi_max,
    phi_min,
)
from .geometry import (
    Polytope,
    Ppr,
    SampledPipe,
    interpolate_membership_constraints,
    lift_time_explicit,
    validate_polytope,
)
from .lp import (
    AffineExpr,
    LinearSystem,
    LpOutcome,
    LpProblem,
    maximize_norm,
    norm_leq_constraints,
    solve,
)
from .norms import NormKind, norm_value
from .pipeline import (
    PipelineOptions,
    export_freespace,
    load_instance,
    run_pipeline,
    save_instance,
)
from .reachability import ReachBoundary, apply_window, decide_reachable

__version__ = "0.1.0"

__all__ = [
    "AffineExpr",
    "BoundaryCache",
    "BudgetExceededError",
    "DegeneratePipesError",
    "DimensionMismatchError",
    "DistanceBounds",
    "EdgeInterval",
    "EmptyPolytopeError",
    "FreeSpaceBoundary",
    "InfeasibleRegionError",
    "LambdaOutOfRangeError",
    "LinearSystem",
    "LpOutcome",
    "LpProblem",
    "NormKind",
    "NumericalFailureError",
    "ParameterOutOfRangeError",
    "ParseError",
    "PhiKind",
    "PipedistError",
    "PipelineOptions",
    "Polytope",
    "Ppr",
    "ReachBoundary",
    "SampledPipe",
    "UnboundedNormError",
    "UnboundedPolytopeError",
    "ValidationError",
    "apply_window",
    "build_boundary",
    "coarse_upper_bound",
    "compute_bounds",
    "decide_min",
    "decide_reachable",
    "decide_var",
    "edge_interval_max",
    "edge_interval_min",
    "export_freespace",
    "free_at",
    "interpolate_membership_constraints",
    "lift_time_explicit",
    "load_instance",
    "maximize_norm",
    "norm_leq_constraints",
    "norm_value",
    "phi_max",
    "phi_min",
    "run_pipeline",
    "save_instance",
    "solve",
    "validate_polytope",
]
