"""Brute-force reference computations for tests and cross-checks.

Everything here is deliberately independent of the LP/free-space engine:
trace sets of box pipes are enumerated as polylines through per-box grid
points, and trajectory distances come from the classic discrete Frechet
coupling DP. Values converge to the continuous ones as grids and
refinements grow (the min from above, the max from below), which is what
makes these usable as oracles for the engine's bounds.

Restricted to axis-aligned boxes: enumerating traces of general
polytopes would need vertex enumeration. Boxes exercise every engine
code path since the engine itself never special-cases them.

Polylines are plain ``(T, D)`` float arrays with ``T >= 2`` rows, one
point per row.
"""

import itertools
from typing import List

import numpy as np

from ._jit import njit
from .errors import BudgetExceededError, DimensionMismatchError
from .norms import NormKind

POLYLINE_BUDGET = 100_000
PAIR_BUDGET = 100_000

_LINF = 0
_L1MAX = 1


def _norm_code(nk: NormKind):
    if nk.kind == "linf":
        return _LINF, 0
    return _L1MAX, nk.split


@njit(cache=True)
def _dfd_kernel(c1, c2, kind, split):
    n1 = c1.shape[0]
    n2 = c2.shape[0]
    d = c1.shape[1]
    prev = np.empty(n2)
    cur = np.empty(n2)
    for i in range(n1):
        for j in range(n2):
            # pointwise norm of c1[i] - c2[j]
            if kind == _LINF:
                dist = 0.0
                for t in range(d):
                    v = abs(c1[i, t] - c2[j, t])
                    if v > dist:
                        dist = v
            else:
                s = 0.0
                for t in range(split):
                    s += abs(c1[i, t] - c2[j, t])
                dist = s
                for t in range(split, d):
                    v = abs(c1[i, t] - c2[j, t])
                    if v > dist:
                        dist = v
            if i == 0 and j == 0:
                best = dist
            elif i == 0:
                best = max(cur[j - 1], dist)
            elif j == 0:
                best = max(prev[0], dist)
            else:
                m = prev[j]
                if prev[j - 1] < m:
                    m = prev[j - 1]
                if cur[j - 1] < m:
                    m = cur[j - 1]
                best = max(m, dist)
            cur[j] = best
        prev, cur = cur, prev
    return prev[n2 - 1]


def discrete_frechet(c1, c2, nk: NormKind) -> float:
    """Classic O(|c1|*|c2|) discrete Frechet coupling value."""
    c1 = np.ascontiguousarray(np.atleast_2d(np.asarray(c1, dtype=float)))
    c2 = np.ascontiguousarray(np.atleast_2d(np.asarray(c2, dtype=float)))
    if c1.shape[1] != c2.shape[1]:
        raise DimensionMismatchError("polylines differ in dimension")
    nk.check_dim(c1.shape[1])
    kind, split = _norm_code(nk)
    return float(_dfd_kernel(c1, c2, kind, split))


def densify(vertices, refinement: int) -> np.ndarray:
    """Subdivide each polyline segment into ``refinement`` pieces.

    Doubling ``refinement`` yields a superset of the points, so discrete
    Frechet values decrease monotonically under refinement doubling.
    """
    vertices = np.atleast_2d(np.asarray(vertices, dtype=float))
    if refinement < 1:
        raise ValueError("refinement must be >= 1")
    m = vertices.shape[0] - 1
    if m == 0:
        return np.vstack([vertices, vertices])
    d = vertices.shape[1]
    out = np.empty((m * refinement + 1, d))
    t = (np.arange(refinement) / refinement)[:, None]
    for k in range(m):
        out[k * refinement : (k + 1) * refinement] = (
            (1.0 - t) * vertices[k] + t * vertices[k + 1]
        )
    out[-1] = vertices[-1]
    return out


def sample_traces(r, grid: int, refinement: int) -> List[np.ndarray]:
    """All piecewise-linear traces through per-box grid points.

    Each sample of ``r`` must be an axis-aligned box; its grid points
    are the per-coordinate ``linspace(lo, hi, grid)`` products (pinned
    coordinates contribute one value). One polyline per combination of
    choices, densified to ``refinement`` pieces per segment.
    """
    if grid < 1:
        raise ValueError("grid must be >= 1")
    choice_sets = []
    for p in r.samples:
        lo, hi = p.box_bounds()
        axes = [np.unique(np.linspace(lo[c], hi[c], grid)) for c in range(p.dim)]
        pts = np.array(list(itertools.product(*axes)))
        choice_sets.append(pts)
    total = 1
    for pts in choice_sets:
        total *= len(pts)
        if total > POLYLINE_BUDGET:
            raise BudgetExceededError(
                f"{total}+ polylines exceed budget {POLYLINE_BUDGET}"
            )
    polylines = []
    for combo in itertools.product(*(range(len(s)) for s in choice_sets)):
        verts = np.array(
            [choice_sets[k][c] for k, c in enumerate(combo)]
        )
        polylines.append(densify(verts, refinement))
    return polylines


def skorokhod_grid(
    times_f, values_f, times_g, values_g, nk: NormKind, resolution: int
) -> float:
    """Skorokhod distance of two timed polylines, via time-explicit lifting.

    Appends the time stamps as an extra coordinate and runs discrete
    Frechet on densified liftings; ``nk`` is the norm on the lifted
    space (so its time component prices the retiming distortion).
    Converges from above as ``resolution`` grows.
    """
    lifted = []
    for times, values in ((times_f, values_f), (times_g, values_g)):
        times = np.atleast_1d(np.asarray(times, dtype=float))
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.shape[0] != times.size:
            raise DimensionMismatchError("times and values must pair up")
        verts = np.hstack([values, times[:, None]])
        per_segment = max(1, -(-resolution // max(verts.shape[0] - 1, 1)))
        lifted.append(densify(verts, per_segment))
    return discrete_frechet(lifted[0], lifted[1], nk)


def pipe_min_max(r1, r2, nk: NormKind, grid: int, refinement: int):
    """(min, max) discrete Frechet over all sampled trace pairs.

    The min converges to the tracepipe minimum-set distance from above
    and the max to the variation distance from below as the grid and
    refinement are refined.
    """
    traces1 = sample_traces(r1, grid, refinement)
    traces2 = sample_traces(r2, grid, refinement)
    if len(traces1) * len(traces2) > PAIR_BUDGET:
        raise BudgetExceededError(
            f"{len(traces1) * len(traces2)} trace pairs exceed budget "
            f"{PAIR_BUDGET}"
        )
    kind, split = _norm_code(nk)
    nk.check_dim(traces1[0].shape[1])
    best_min = np.inf
    best_max = -np.inf
    stack1 = [np.ascontiguousarray(t) for t in traces1]
    stack2 = [np.ascontiguousarray(t) for t in traces2]
    for t1 in stack1:
        for t2 in stack2:
            v = _dfd_kernel(t1, t2, kind, split)
            if v < best_min:
                best_min = v
            if v > best_max:
                best_max = v
    return float(best_min), float(best_max)
