"""Halfspace polytopes, sampled pipes, and time-explicit lifting.

A pipe is handled in two stages. Raw reach-set samples arrive as a
:class:`SampledPipe`: polytopes in value space tagged with strictly
increasing sample times. :func:`lift_time_explicit` turns that into a
:class:`Ppr`, a pipe over integer parameter indices whose samples live
one dimension higher with the clock value pinned into the extra
coordinate; from then on all timing information is ordinary geometry.

Between integer indices a :class:`Ppr` is completed by the scaled
Minkowski combination ``(1 - t) * P0 + t * P1``. That set is never
materialized in halfspace form; membership is expressed inside LPs via
:func:`interpolate_membership_constraints`.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptyPolytopeError,
    LambdaOutOfRangeError,
    UnboundedPolytopeError,
)
from .lp import AffineExpr, LinearSystem

_ZERO_ROW_TOL = 0.0  # rows must have an exactly representable nonzero entry


@dataclass(frozen=True)
class Polytope:
    """Convex polytope ``{x : a @ x <= b}`` in halfspace form.

    Construction checks shapes and zero rows only; emptiness and
    boundedness are LP questions answered by :func:`validate_polytope`.
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.a, dtype=float))
        b = np.atleast_1d(np.asarray(self.b, dtype=float))
        if a.ndim != 2 or b.ndim != 1 or a.shape[0] != b.shape[0]:
            raise DimensionMismatchError(
                f"halfspace shapes {a.shape} vs {b.shape} are inconsistent"
            )
        if a.shape[0] == 0 or a.shape[1] == 0:
            raise DimensionMismatchError("polytope needs at least one row")
        if not np.all(np.isfinite(a)) or not np.all(np.isfinite(b)):
            raise DimensionMismatchError("halfspace data must be finite")
        if np.any(np.all(a == 0.0, axis=1)):
            raise DimensionMismatchError("halfspace row with all-zero normal")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return self.a.shape[1]

    @property
    def num_rows(self) -> int:
        return self.a.shape[0]

    @staticmethod
    def box(lo, hi) -> "Polytope":
        """Axis-aligned box ``lo <= x <= hi`` (degenerate sides allowed)."""
        lo = np.atleast_1d(np.asarray(lo, dtype=float))
        hi = np.atleast_1d(np.asarray(hi, dtype=float))
        if lo.shape != hi.shape:
            raise DimensionMismatchError("box bounds shape mismatch")
        if np.any(lo > hi):
            raise EmptyPolytopeError("box has lo > hi")
        d = lo.size
        eye = np.eye(d)
        return Polytope(np.vstack([eye, -eye]), np.concatenate([hi, -lo]))

    @staticmethod
    def point(p) -> "Polytope":
        p = np.atleast_1d(np.asarray(p, dtype=float))
        return Polytope.box(p, p)

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionMismatchError("point dimension mismatch")
        return bool(np.all(self.a @ x <= self.b + tol))

    def box_bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        """Per-coordinate (lo, hi) when every row is axis-aligned.

        Raises ValueError for rows that are not signed unit vectors; used
        by the brute-force oracle, which is restricted to boxes.
        """
        lo = np.full(self.dim, -np.inf)
        hi = np.full(self.dim, np.inf)
        for row, rhs in zip(self.a, self.b):
            (nz,) = np.nonzero(row)
            if nz.size != 1:
                raise ValueError("polytope is not an axis-aligned box")
            j = int(nz[0])
            coef = row[j]
            if coef > 0:
                hi[j] = min(hi[j], rhs / coef)
            else:
                lo[j] = max(lo[j], rhs / coef)
        if np.any(~np.isfinite(lo)) or np.any(~np.isfinite(hi)):
            raise ValueError("box is unbounded in some coordinate")
        return lo, hi


def validate_polytope(p: Polytope) -> Polytope:
    """Return ``p`` iff it is nonempty and bounded.

    Feasibility is one LP; boundedness maximizes each signed coordinate.
    Raises EmptyPolytopeError or UnboundedPolytopeError otherwise.
    """
    sys = LinearSystem()
    idx = sys.add_polytope(p)
    if sys.feasible_point() is None:
        raise EmptyPolytopeError("polytope is empty")
    for j in range(p.dim):
        for sign in (1.0, -1.0):
            out = sys.solve(idx[j : j + 1], np.array([sign]), maximize=True)
            if out.status == "unbounded":
                raise UnboundedPolytopeError(
                    f"polytope unbounded in coordinate {j}"
                )
    return p


def interpolate_membership_constraints(
    p0: Polytope,
    p1: Polytope,
    lam: float,
    sys: Optional[LinearSystem] = None,
) -> Tuple[LinearSystem, AffineExpr]:
    """Membership encoding of the interpolated set ``(1-lam)*p0 + lam*p1``.

    Adds auxiliary blocks ``u in p0`` and ``v in p1`` to ``sys`` and
    returns the point expression ``(1-lam)*u + lam*v``. At ``lam=0`` the
    satisfiable points are exactly ``p0``, at ``lam=1`` exactly ``p1``.
    """
    if p0.dim != p1.dim:
        raise DimensionMismatchError("interpolation endpoints differ in dim")
    if not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRangeError(f"lambda {lam} outside [0, 1]")
    if sys is None:
        sys = LinearSystem()
    u = sys.add_polytope(p0)
    v = sys.add_polytope(p1)
    point = AffineExpr.of_vars(u, 1.0 - lam) + AffineExpr.of_vars(v, lam)
    return sys, point


@dataclass(frozen=True)
class Ppr:
    """Polytope pipe sampled at integer parameters 0..m, interpolated between.

    A single-sample pipe (m = 0) is accepted and means a constant pipe
    over a zero-length parameter interval.
    """

    samples: Tuple[Polytope, ...]

    def __post_init__(self):
        samples = tuple(self.samples)
        if not samples:
            raise DimensionMismatchError("pipe needs at least one sample")
        d = samples[0].dim
        if any(p.dim != d for p in samples):
            raise DimensionMismatchError("pipe samples differ in dimension")
        object.__setattr__(self, "samples", samples)

    @property
    def m(self) -> int:
        return len(self.samples) - 1

    @property
    def dim(self) -> int:
        return self.samples[0].dim

    def segment(self, k: int) -> Tuple[Polytope, Polytope]:
        return self.samples[k], self.samples[k + 1]

    def membership_at(
        self, rho: float, sys: LinearSystem, int_tol: float = 1e-9
    ) -> AffineExpr:
        """Point expression for membership in the pipe at parameter ``rho``."""
        if not -int_tol <= rho <= self.m + int_tol:
            raise LambdaOutOfRangeError(f"parameter {rho} outside [0, {self.m}]")
        near = round(rho)
        if abs(rho - near) <= int_tol and 0 <= near <= self.m:
            idx = sys.add_polytope(self.samples[int(near)])
            return AffineExpr.of_vars(idx)
        k = int(np.floor(rho))
        _, point = interpolate_membership_constraints(
            self.samples[k], self.samples[k + 1], rho - k, sys
        )
        return point


@dataclass(frozen=True)
class SampledPipe:
    """Reach-set samples in value space at strictly increasing times."""

    times: np.ndarray
    polytopes: Tuple[Polytope, ...]

    def __post_init__(self):
        times = np.atleast_1d(np.asarray(self.times, dtype=float))
        polytopes = tuple(self.polytopes)
        if times.size != len(polytopes) or times.size == 0:
            raise DimensionMismatchError("times and polytopes must pair up")
        if np.any(np.diff(times) <= 0):
            raise DimensionMismatchError("sample times must strictly increase")
        d = polytopes[0].dim
        if any(p.dim != d for p in polytopes):
            raise DimensionMismatchError("pipe samples differ in dimension")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "polytopes", polytopes)

    @property
    def dim(self) -> int:
        return self.polytopes[0].dim

    @property
    def m(self) -> int:
        return len(self.polytopes) - 1


def lift_time_explicit(sp: SampledPipe) -> Ppr:
    """Append the clock as an extra pinned coordinate.

    Sample k becomes the polytope of ``sp`` extended with
    ``x[d] <= t_k`` and ``-x[d] <= -t_k``; parameter indices replace the
    raw times, which now live in the lifted coordinate.
    """
    d = sp.dim
    lifted = []
    for t, p in zip(sp.times, sp.polytopes):
        a = np.zeros((p.num_rows + 2, d + 1))
        a[: p.num_rows, :d] = p.a
        a[p.num_rows, d] = 1.0
        a[p.num_rows + 1, d] = -1.0
        b = np.concatenate([p.b, [t, -t]])
        lifted.append(Polytope(a, b))
    return Ppr(tuple(lifted))
