"""Free-space boundaries of two polytope pipes at a distance threshold.

For a threshold ``delta`` and a polytope comparison (best-case
``phi_min`` or worst-case ``phi_max``), the free space is the set of
parameter pairs whose compared sets are within ``delta``. Because the
free region of every unit cell is convex, only the cell-boundary
intervals matter; this module computes them.

The two comparisons need different machinery:

* ``phi_min`` edges reduce exactly to two LPs. Membership in the
  interpolated set ``(1-lam)*P0 + lam*P1`` with variable ``lam`` is
  bilinear as written, but substituting ``z0 = (1-lam)*x0, z1 = lam*x1``
  and scaling the right-hand sides gives an equivalent linear system, so
  min/max of ``lam`` subject to closeness is plain LP.

* ``phi_max`` over an interpolated set against a fixed polytope is a
  norm maximization, not one LP. At a fixed ``lam`` it decomposes into a
  batch of support-function LPs; along the edge each support value is
  affine in ``lam``, so the fixed-``lam`` tests reuse per-sample support
  tables. The edge interval is then located by scanning ``lam`` on a
  1/K grid and bisecting K extra steps around the first and last free
  grid points. Intervals shorter than 1/K may be missed; the result is
  conservative (an interval is reported only if actually free).
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

import numpy as np

from .errors import (
    DimensionMismatchError,
    InfeasibleRegionError,
    ParameterOutOfRangeError,
)
from .geometry import Polytope, Ppr
from .lp import AffineExpr, LinearSystem, maximize_norm, norm_leq_constraints
from .norms import NormKind, support_directions

# Phi <= delta is tested as Phi <= delta + TIE_TOL to absorb LP round-off.
TIE_TOL = 1e-9


class PhiKind(Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class EdgeInterval:
    """Free sub-interval of one cell edge in edge-local coordinates.

    An empty edge is represented as ``None`` wherever intervals are
    stored; by cell convexity a non-empty free subset is one interval.
    """

    lo: float
    hi: float

    def __post_init__(self):
        if not 0.0 <= self.lo <= self.hi <= 1.0:
            raise ValueError(f"invalid edge interval [{self.lo}, {self.hi}]")

    def contains(self, x: float, tol: float = 1e-12) -> bool:
        return self.lo - tol <= x <= self.hi + tol


MaybeInterval = Optional[EdgeInterval]


@dataclass
class FreeSpaceBoundary:
    """Free intervals on all cell edges plus corner freeness flags.

    With pipe 1 indexing rows and pipe 2 columns,
    ``horizontal[i][j]`` is the free interval of the edge at integer
    pipe-1 parameter ``i`` spanning pipe-2 parameters ``[j, j+1]`` (the
    bottom edge of cell ``(i, j)``), and ``vertical[i][j]`` spans pipe-1
    parameters ``[i, i+1]`` at integer pipe-2 parameter ``j`` (the left
    edge). ``corners[i][j]`` flags freeness at the integer pair.
    """

    horizontal: List[List[MaybeInterval]]  # (m1+1) x m2
    vertical: List[List[MaybeInterval]]  # m1 x (m2+1)
    corners: np.ndarray  # (m1+1) x (m2+1) bool

    @property
    def m1(self) -> int:
        return self.corners.shape[0] - 1

    @property
    def m2(self) -> int:
        return self.corners.shape[1] - 1


def phi_min(p1: Polytope, p2: Polytope, nk: NormKind) -> float:
    """Minimum norm distance between two polytopes (one LP)."""
    _check_pair(p1, p2, nk)
    sys = LinearSystem()
    x = sys.add_polytope(p1)
    y = sys.add_polytope(p2)
    dv = sys.add_var(lo=0.0)
    expr = AffineExpr.of_vars(x) - AffineExpr.of_vars(y)
    norm_leq_constraints(expr, dv, nk, sys, delta_is_var=True)
    out = sys.solve(np.array([dv]), np.array([1.0]))
    if not out.is_optimal:
        raise InfeasibleRegionError("phi_min over empty polytope product")
    return max(float(out.value), 0.0)


def phi_max(p1: Polytope, p2: Polytope, nk: NormKind) -> float:
    """Maximum norm distance between two polytopes (support LP batch)."""
    _check_pair(p1, p2, nk)
    sys = LinearSystem()
    x = sys.add_polytope(p1)
    y = sys.add_polytope(p2)
    expr = AffineExpr.of_vars(x) - AffineExpr.of_vars(y)
    return maximize_norm(expr, sys, nk)


def _check_pair(p1, p2, nk) -> None:
    if p1.dim != p2.dim:
        raise DimensionMismatchError("polytope dimensions differ")
    nk.check_dim(p1.dim)


def support_value(p: Polytope, direction) -> float:
    """Support function ``h_p(direction) = max direction.x over p``."""
    sys = LinearSystem()
    idx = sys.add_polytope(p)
    out = sys.solve(idx, np.asarray(direction, dtype=float), maximize=True)
    if not out.is_optimal:
        raise InfeasibleRegionError("support of empty or unbounded polytope")
    return float(out.value)


def free_at(
    r1: Ppr,
    r2: Ppr,
    rho1: float,
    rho2: float,
    delta: float,
    phi: PhiKind,
    nk: NormKind,
) -> bool:
    """Is the parameter pair ``(rho1, rho2)`` in the delta-free space?"""
    if not 0.0 <= rho1 <= r1.m or not 0.0 <= rho2 <= r2.m:
        raise ParameterOutOfRangeError(
            f"({rho1}, {rho2}) outside [0, {r1.m}] x [0, {r2.m}]"
        )
    if delta < 0:
        raise ParameterOutOfRangeError("delta must be nonnegative")
    _check_pair(r1.samples[0], r2.samples[0], nk)
    sys = LinearSystem()
    x = r1.membership_at(rho1, sys)
    y = r2.membership_at(rho2, sys)
    expr = x - y
    if phi is PhiKind.MIN:
        norm_leq_constraints(expr, delta + TIE_TOL, nk, sys)
        return sys.feasible_point() is not None
    return maximize_norm(expr, sys, nk) <= delta + TIE_TOL


# ---------------------------------------------------------------------------
# phi_min edges: exact intervals via the scaled-membership LP


class _MinEdgeProto:
    """Reusable kernel form of one edge's min/max-lambda LP.

    The right-hand side is affine in delta: ``b = b0 + delta * b_delta``.
    """

    def __init__(self, p0: Polytope, p1: Polytope, q: Polytope, nk: NormKind):
        kf0, lam = _min_edge_kernel(p0, p1, q, nk, 0.0)
        kf1, _ = _min_edge_kernel(p0, p1, q, nk, 1.0)
        self.kf = kf0
        self.b0 = kf0.b
        self.b_delta = kf1.b - kf0.b
        self.lam_idx = np.array([lam])

    def interval(self, delta: float) -> MaybeInterval:
        b = self.b0 + (delta + TIE_TOL) * self.b_delta
        lo_out = self.kf.solve(self.lam_idx, np.ones(1), b_override=b)
        if not lo_out.is_optimal:
            return None
        hi_out = self.kf.solve(
            self.lam_idx, np.ones(1), maximize=True, b_override=b
        )
        lo = min(max(float(lo_out.value), 0.0), 1.0)
        # Same feasible region; guard against round-off crossing.
        hi = lo if not hi_out.is_optimal else float(hi_out.value)
        hi = min(max(hi, lo), 1.0)
        return EdgeInterval(lo, hi)


def _min_edge_kernel(p0, p1, q, nk, delta):
    """Kernel form of: exists point of interp(lam) within delta of q.

    Encodes the interpolated point as ``z0 + z1`` with
    ``A0 z0 <= (1-lam) b0`` and ``A1 z1 <= lam b1``; exact because
    validated polytopes are bounded (their recession cone is {0}).
    """
    sys = LinearSystem()
    z0 = sys.add_vars(p0.dim)
    z1 = sys.add_vars(p1.dim)
    y = sys.add_polytope(q)
    lam = sys.add_var(lo=0.0, hi=1.0)
    for row, rhs in zip(p0.a, p0.b):
        # A0 z0 + lam*b0 <= b0
        sys.add_le(np.append(z0, lam), np.append(row, rhs), rhs)
    for row, rhs in zip(p1.a, p1.b):
        # A1 z1 - lam*b1 <= 0
        sys.add_le(np.append(z1, lam), np.append(row, -rhs), 0.0)
    expr = (
        AffineExpr.of_vars(z0)
        + AffineExpr.of_vars(z1)
        - AffineExpr.of_vars(y)
    )
    norm_leq_constraints(expr, delta, nk, sys)
    return sys.kernel_base(), lam


def edge_interval_min(
    p0: Polytope, p1: Polytope, q: Polytope, delta: float, nk: NormKind
) -> MaybeInterval:
    """Exact free interval of the edge (interp(lam) vs q) for phi_min."""
    _check_edge_args(p0, p1, q, nk, delta)
    return _MinEdgeProto(p0, p1, q, nk).interval(delta)


def _check_edge_args(p0, p1, q, nk, delta):
    if not p0.dim == p1.dim == q.dim:
        raise DimensionMismatchError("edge polytopes differ in dimension")
    nk.check_dim(p0.dim)
    if delta < 0:
        raise ParameterOutOfRangeError("delta must be nonnegative")


# ---------------------------------------------------------------------------
# phi_max edges: conservative K-sampled intervals on support tables


def _support_table(p: Polytope, dirs: np.ndarray) -> np.ndarray:
    return np.array([support_value(p, c) for c in dirs])


def _neg_permutation(dirs: np.ndarray) -> np.ndarray:
    """Index permutation mapping each direction to its negation."""
    lookup = {tuple(np.round(c, 12)): i for i, c in enumerate(dirs)}
    return np.array([lookup[tuple(np.round(-c, 12))] for c in dirs])


def _scan_max_edges(g0, g1, delta, k):
    """Vectorized interval scan for edges with worst-case value
    ``g(lam) = max_c ((1-lam) g0 + lam g1)`` (convex piecewise linear).

    ``g0, g1``: (edges, directions). Returns (any_free, lo, hi) arrays.
    Grid points lam = i/k are tested exactly; endpoints between grid
    points are bisected k steps and rounded inward (the reported
    interval is always actually free).
    """
    n_edges = g0.shape[0]
    bound = delta + TIE_TOL
    grid = np.linspace(0.0, 1.0, k + 1)
    vals = np.max(
        g0[:, :, None] * (1.0 - grid) + g1[:, :, None] * grid, axis=1
    )  # (edges, k+1)
    free = vals <= bound
    any_free = free.any(axis=1)
    lo = np.zeros(n_edges)
    hi = np.ones(n_edges)
    if not any_free.any():
        return any_free, lo, hi

    first = np.argmax(free, axis=1)
    last = k - np.argmax(free[:, ::-1], axis=1)

    def g_at(lam_vec, rows):
        lam = lam_vec[:, None]
        return np.max(g0[rows] * (1.0 - lam) + g1[rows] * lam, axis=1)

    # Lower endpoints: bisect (first-1, first]/k for edges not free at 0.
    rows = np.flatnonzero(any_free & (first > 0))
    if rows.size:
        blo = (first[rows] - 1) / k
        bhi = first[rows] / k
        for _ in range(k):
            mid = 0.5 * (blo + bhi)
            is_free = g_at(mid, rows) <= bound
            bhi = np.where(is_free, mid, bhi)
            blo = np.where(is_free, blo, mid)
        lo[rows] = bhi
    # Upper endpoints: bisect [last, last+1)/k for edges not free at 1.
    rows = np.flatnonzero(any_free & (last < k))
    if rows.size:
        blo = last[rows] / k
        bhi = (last[rows] + 1) / k
        for _ in range(k):
            mid = 0.5 * (blo + bhi)
            is_free = g_at(mid, rows) <= bound
            blo = np.where(is_free, mid, blo)
            bhi = np.where(is_free, bhi, mid)
        hi[rows] = blo
    lo[any_free & (first == 0)] = 0.0
    hi[any_free & (last == k)] = 1.0
    return any_free, lo, hi


def edge_interval_max(
    p0: Polytope,
    p1: Polytope,
    q: Polytope,
    delta: float,
    nk: NormKind,
    k: int,
) -> MaybeInterval:
    """Conservative free interval of the edge (interp(lam) vs q) for phi_max.

    Tests the worst-case distance at lam = 0, 1/k, ..., 1 and bisects k
    extra steps per endpoint (endpoint precision 2^-k within the
    bracketing grid cell). Guaranteed to find the interval whenever the
    true one has length at least 1/k; may report None otherwise.
    """
    _check_edge_args(p0, p1, q, nk, delta)
    if k < 1:
        raise ParameterOutOfRangeError("k must be a positive integer")
    dirs = support_directions(nk, p0.dim)
    neg = _neg_permutation(dirs)
    s0 = _support_table(p0, dirs)
    s1 = _support_table(p1, dirs)
    sq = _support_table(q, dirs)[neg]
    g0 = (s0 + sq)[None, :]
    g1 = (s1 + sq)[None, :]
    any_free, lo, hi = _scan_max_edges(g0, g1, delta, k)
    if not any_free[0]:
        return None
    return EdgeInterval(float(min(lo[0], hi[0])), float(max(lo[0], hi[0])))


# ---------------------------------------------------------------------------
# whole-boundary computation


class BoundaryCache:
    """Per-pipe-pair tables reused across thresholds during binary search.

    Caches support tables and corner phi values (delta-independent) and
    the kernel forms of every phi_min edge LP (re-solved per delta with
    an updated right-hand side).
    """

    def __init__(self, r1: Ppr, r2: Ppr, nk: NormKind):
        if r1.dim != r2.dim:
            raise DimensionMismatchError("pipes differ in dimension")
        nk.check_dim(r1.dim)
        self.r1 = r1
        self.r2 = r2
        self.nk = nk
        self.dirs = support_directions(nk, r1.dim)
        self.neg = _neg_permutation(self.dirs)
        self._sup1 = None
        self._sup2 = None
        self._phimax_corners = None
        self._phimin_corners = None
        self._min_protos = {}

    def sup1(self) -> np.ndarray:
        if self._sup1 is None:
            self._sup1 = np.array(
                [_support_table(p, self.dirs) for p in self.r1.samples]
            )
        return self._sup1

    def sup2(self) -> np.ndarray:
        if self._sup2 is None:
            self._sup2 = np.array(
                [_support_table(p, self.dirs) for p in self.r2.samples]
            )
        return self._sup2

    def phimax_corners(self) -> np.ndarray:
        """Table of worst-case distances between all sample pairs."""
        if self._phimax_corners is None:
            s1n = self.sup1()[:, self.neg]
            self._phimax_corners = np.max(
                s1n[:, None, :] + self.sup2()[None, :, :], axis=2
            )
        return self._phimax_corners

    def phimin_corners(self) -> np.ndarray:
        """Table of best-case distances between all sample pairs."""
        if self._phimin_corners is None:
            table = np.empty((self.r1.m + 1, self.r2.m + 1))
            for i, p in enumerate(self.r1.samples):
                for j, q in enumerate(self.r2.samples):
                    table[i, j] = phi_min(p, q, self.nk)
            self._phimin_corners = table
        return self._phimin_corners

    def min_proto(self, orient: str, i: int, j: int) -> _MinEdgeProto:
        key = (orient, i, j)
        proto = self._min_protos.get(key)
        if proto is None:
            if orient == "h":  # moving pipe 2 over [j, j+1], fixed r1(i)
                p0, p1 = self.r2.segment(j)
                q = self.r1.samples[i]
            else:  # moving pipe 1 over [i, i+1], fixed r2(j)
                p0, p1 = self.r1.segment(i)
                q = self.r2.samples[j]
            proto = _MinEdgeProto(p0, p1, q, self.nk)
            self._min_protos[key] = proto
        return proto


def _edge_in_band(cells, window) -> bool:
    if window is None or not cells:  # degenerate grids have cell-less edges
        return True
    return any(abs(i - j) <= window for i, j in cells)


def _h_edge_cells(i, j, m1):
    cells = []
    if i > 0:
        cells.append((i - 1, j))
    if i < m1:
        cells.append((i, j))
    return cells


def _v_edge_cells(i, j, m2):
    cells = []
    if j > 0:
        cells.append((i, j - 1))
    if j < m2:
        cells.append((i, j))
    return cells


def build_boundary(
    r1: Ppr,
    r2: Ppr,
    delta: float,
    phi: PhiKind,
    nk: NormKind,
    k: int = 64,
    window: Optional[int] = None,
    cache: Optional[BoundaryCache] = None,
) -> FreeSpaceBoundary:
    """Free intervals on every cell edge plus corner flags.

    Edges of cells outside the window band |i - j| <= window are skipped
    and marked empty (an edge is computed if any incident cell is in
    band). Corner flags are evaluated directly at integer pairs.
    """
    if delta < 0:
        raise ParameterOutOfRangeError("delta must be nonnegative")
    if window is not None and window < 1:
        raise ParameterOutOfRangeError("window must be >= 1")
    if cache is None:
        cache = BoundaryCache(r1, r2, nk)
    m1, m2 = r1.m, r2.m
    bound = delta + TIE_TOL

    if phi is PhiKind.MIN:
        corner_free = cache.phimin_corners() <= bound
    else:
        corner_free = cache.phimax_corners() <= bound

    horizontal: List[List[MaybeInterval]] = [
        [None] * m2 for _ in range(m1 + 1)
    ]
    vertical: List[List[MaybeInterval]] = [
        [None] * (m2 + 1) for _ in range(m1)
    ]

    h_keep = [
        (i, j)
        for i in range(m1 + 1)
        for j in range(m2)
        if _edge_in_band(_h_edge_cells(i, j, m1), window)
    ]
    v_keep = [
        (i, j)
        for i in range(m1)
        for j in range(m2 + 1)
        if _edge_in_band(_v_edge_cells(i, j, m2), window)
    ]

    if phi is PhiKind.MIN:
        for i, j in h_keep:
            horizontal[i][j] = cache.min_proto("h", i, j).interval(delta)
        for i, j in v_keep:
            vertical[i][j] = cache.min_proto("v", i, j).interval(delta)
    else:
        sup1 = cache.sup1()
        sup2 = cache.sup2()
        s1n = sup1[:, cache.neg]
        s2n = sup2[:, cache.neg]
        if h_keep:
            hi_idx = np.array([i for i, _ in h_keep])
            hj_idx = np.array([j for _, j in h_keep])
            g0 = s1n[hi_idx] + sup2[hj_idx]
            g1 = s1n[hi_idx] + sup2[hj_idx + 1]
            any_free, lo, hi = _scan_max_edges(g0, g1, delta, k)
            for e, (i, j) in enumerate(h_keep):
                if any_free[e]:
                    horizontal[i][j] = EdgeInterval(
                        float(min(lo[e], hi[e])), float(max(lo[e], hi[e]))
                    )
        if v_keep:
            vi_idx = np.array([i for i, _ in v_keep])
            vj_idx = np.array([j for _, j in v_keep])
            g0 = sup1[vi_idx] + s2n[vj_idx]
            g1 = sup1[vi_idx + 1] + s2n[vj_idx]
            any_free, lo, hi = _scan_max_edges(g0, g1, delta, k)
            for e, (i, j) in enumerate(v_keep):
                if any_free[e]:
                    vertical[i][j] = EdgeInterval(
                        float(min(lo[e], hi[e])), float(max(lo[e], hi[e]))
                    )

    return FreeSpaceBoundary(horizontal, vertical, corner_free.copy())
