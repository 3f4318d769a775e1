"""Polytopes, sampled pipes, and time-explicit lifting.
====================================================

The building blocks: halfspace polytopes, validity checking, the
interpolation semantics between samples, and how a timed pipe becomes a
pipe over integer parameters with the clock pinned into an extra
coordinate.
"""

import numpy as np

from pipedist import (
    EmptyPolytopeError,
    LinearSystem,
    Polytope,
    SampledPipe,
    UnboundedPolytopeError,
    interpolate_membership_constraints,
    lift_time_explicit,
    validate_polytope,
)

# A polytope is A x <= b. Boxes and points are the common special cases.
unit_box = Polytope.box([0.0, 0.0], [1.0, 1.0])
needle = Polytope.point([0.3, 0.7])
print("unit box rows:")
print(np.hstack([unit_box.a, unit_box.b[:, None]]))

# Validation is an LP question: nonempty and bounded.
validate_polytope(unit_box)
try:
    validate_polytope(Polytope(np.array([[1.0, 0.0]]), np.array([1.0])))
except UnboundedPolytopeError as exc:
    print("halfplane rejected:", exc)
try:
    validate_polytope(
        Polytope(np.array([[1.0], [-1.0]]), np.array([0.0, -1.0]))
    )
except EmptyPolytopeError as exc:
    print("contradiction rejected:", exc)

# Between samples a pipe is the scaled Minkowski combination
# (1 - lam) * P0 + lam * P1. For boxes that is just the interpolated box:
p0 = Polytope.box([0.0], [1.0])
p1 = Polytope.box([2.0], [3.0])
for lam in (0.0, 0.5, 1.0):
    sys, point = interpolate_membership_constraints(p0, p1, lam)
    probe = 1.5
    idx, vals, const = point.row(np.array([1.0]))
    sys.add_eq(idx, vals, probe - const)
    feasible = sys.feasible_point() is not None
    print(f"lam={lam}: 1.5 in interpolated set -> {feasible}")

# A sampled pipe carries real times; lifting pins them into coordinate d.
pipe = SampledPipe(
    np.array([0.0, 0.5, 2.0]),
    (Polytope.box([0.0], [1.0]),
     Polytope.box([0.2], [1.2]),
     Polytope.box([1.0], [2.0])),
)
lifted = lift_time_explicit(pipe)
print(f"lifted pipe: {lifted.m + 1} samples in R^{lifted.dim}")
print("sample 1 contains (0.7, 0.5)?",
      lifted.samples[1].contains(np.array([0.7, 0.5])))
print("sample 1 contains (0.7, 0.6)?",
      lifted.samples[1].contains(np.array([0.7, 0.6])))
