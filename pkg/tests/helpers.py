"""Shared test utilities: instance generators and brute-force oracles."""

import numpy as np

from pipedist import EdgeInterval, FreeSpaceBoundary, Polytope, Ppr, SampledPipe


# ---------------------------------------------------------------------------
# generators


def random_box(rng, dim, center_lo=-1.0, center_hi=1.0, width_hi=1.0):
    center = rng.uniform(center_lo, center_hi, dim)
    half = rng.uniform(0.0, width_hi, dim) / 2.0
    return Polytope.box(center - half, center + half)


def random_box_ppr(rng, m, dim, drift=0.5, width_hi=1.0, offset=0.0):
    """Box pipe whose centers follow a bounded random walk."""
    center = rng.uniform(-0.5, 0.5, dim) + offset
    samples = []
    for _ in range(m + 1):
        half = rng.uniform(0.05, width_hi, dim) / 2.0
        samples.append(Polytope.box(center - half, center + half))
        center = center + rng.uniform(-drift, drift, dim)
    return Ppr(tuple(samples))


def random_sampled_pipe(rng, m, dim, drift=0.5, width_hi=0.5, offset=0.0,
                        times=None):
    if times is None:
        times = np.arange(m + 1, dtype=float)
    center = rng.uniform(-0.3, 0.3, dim) + offset
    polys = []
    for _ in range(m + 1):
        half = rng.uniform(0.05, width_hi, dim) / 2.0
        polys.append(Polytope.box(center - half, center + half))
        center = center + rng.uniform(-drift, drift, dim)
    return SampledPipe(np.asarray(times, dtype=float), tuple(polys))


def constant_point_ppr(value, m=1):
    p = Polytope.point(np.atleast_1d(value))
    return Ppr(tuple(p for _ in range(m + 1)))


def singleton_ppr(points):
    """Pipe of singleton polytopes through the given points."""
    return Ppr(tuple(Polytope.point(p) for p in points))


def random_fsb(rng, m1, m2, p_empty=0.3, snap=None):
    """Random (possibly inconsistent) boundary data for reachability tests.

    With ``snap`` set, interval endpoints are multiples of it, so a
    discretized path oracle with that step sees the exact intervals.
    """

    def rand_interval():
        if rng.random() < p_empty:
            return None
        a, b = np.sort(rng.uniform(0.0, 1.0, 2))
        if snap is not None:
            a = round(a / snap) * snap
            b = round(b / snap) * snap
        return EdgeInterval(float(a), float(b))

    horizontal = [[rand_interval() for _ in range(m2)] for _ in range(m1 + 1)]
    vertical = [[rand_interval() for _ in range(m2 + 1)] for _ in range(m1)]
    corners = rng.random((m1 + 1, m2 + 1)) < 0.8
    return FreeSpaceBoundary(horizontal, vertical, corners)


# ---------------------------------------------------------------------------
# reachability oracle: exhaustive monotone-path search over discretized
# boundary points (step controls samples per edge)


def _edge_samples(interval, ts, tol=1e-9):
    if interval is None:
        return np.zeros(ts.size, dtype=bool)
    return (ts >= interval.lo - tol) & (ts <= interval.hi + tol)


def reach_oracle(fsb: FreeSpaceBoundary, step=1e-2) -> bool:
    """Monotone path search from (0,0) to (m1,m2) on sampled edge points.

    Paths move within free edge intervals, across shared integer line
    points, and across any single cell from its bottom/left samples to
    top/right samples that are >= componentwise. Corner flags gate only
    the start and goal. Fixed-point iteration over these moves.
    """
    m1, m2 = fsb.m1, fsb.m2
    n = int(round(1.0 / step)) + 1
    ts = np.linspace(0.0, 1.0, n)

    free_h = [[_edge_samples(fsb.horizontal[i][j], ts) for j in range(m2)]
              for i in range(m1 + 1)]
    free_v = [[_edge_samples(fsb.vertical[i][j], ts) for j in range(m2 + 1)]
              for i in range(m1)]
    reach_h = [[np.zeros(n, dtype=bool) for _ in range(m2)]
               for _ in range(m1 + 1)]
    reach_v = [[np.zeros(n, dtype=bool) for _ in range(m2 + 1)]
               for _ in range(m1)]

    if not fsb.corners[0, 0] or not fsb.corners[m1, m2]:
        return False
    if m1 == 0 and m2 == 0:
        return True

    start_marks = []
    if m2 > 0 and free_h[0][0][0]:
        start_marks.append(("h", 0, 0))
    if m1 > 0 and free_v[0][0][0]:
        start_marks.append(("v", 0, 0))
    for kind, i, j in start_marks:
        (reach_h if kind == "h" else reach_v)[i][j][0] = True

    def within_edge(reach, free):
        """Close reachability upward inside contiguous free runs."""
        out = reach.copy()
        run_start = None
        for t in range(free.size):
            if free[t]:
                if run_start is None:
                    run_start = t
            else:
                run_start = None
            if run_start is not None and out[t]:
                hit = t
                while hit + 1 < free.size and free[hit + 1]:
                    hit += 1
                    out[hit] = True
        return out

    changed = True
    while changed:
        changed = False

        def update(store, i, j, new):
            nonlocal changed
            merged = store[i][j] | new
            if merged.any() and not np.array_equal(merged, store[i][j]):
                store[i][j] = merged
                changed = True

        # closure inside edges
        for i in range(m1 + 1):
            for j in range(m2):
                update(reach_h, i, j, within_edge(reach_h[i][j], free_h[i][j]))
        for i in range(m1):
            for j in range(m2 + 1):
                update(reach_v, i, j, within_edge(reach_v[i][j], free_v[i][j]))

        # crossing shared integer points along grid lines
        for i in range(m1 + 1):
            for j in range(m2 - 1):
                if reach_h[i][j][-1] and free_h[i][j + 1][0]:
                    new = np.zeros(n, dtype=bool)
                    new[0] = True
                    update(reach_h, i, j + 1, new)
        for i in range(m1 - 1):
            for j in range(m2 + 1):
                if reach_v[i][j][-1] and free_v[i + 1][j][0]:
                    new = np.zeros(n, dtype=bool)
                    new[0] = True
                    update(reach_v, i + 1, j, new)

        # crossing cells: any exit sample >= some entry sample (componentwise)
        for i in range(m1):
            for j in range(m2):
                bottom = reach_h[i][j]
                left = reach_v[i][j]
                has_bottom = bottom.any()
                has_left = left.any()
                if not has_bottom and not has_left:
                    continue
                # top edge: same pipe-2 coordinate axis as bottom
                new_top = np.zeros(n, dtype=bool)
                if has_left:
                    new_top |= free_h[i + 1][j]
                if has_bottom:
                    min_t = ts[bottom].min()
                    new_top |= free_h[i + 1][j] & (ts >= min_t - 1e-12)
                update(reach_h, i + 1, j, new_top)
                new_right = np.zeros(n, dtype=bool)
                if has_bottom:
                    new_right |= free_v[i][j + 1]
                if has_left:
                    min_t = ts[left].min()
                    new_right |= free_v[i][j + 1] & (ts >= min_t - 1e-12)
                update(reach_v, i, j + 1, new_right)

    reached_goal = False
    if m2 > 0 and reach_h[m1][m2 - 1][-1]:
        reached_goal = True
    if m1 > 0 and reach_v[m1 - 1][m2][-1]:
        reached_goal = True
    return reached_goal


# ---------------------------------------------------------------------------
# box interpolation oracle


def box_interp_bounds(p0: Polytope, p1: Polytope, lam: float):
    """Componentwise interval of the interpolated box set."""
    lo0, hi0 = p0.box_bounds()
    lo1, hi1 = p1.box_bounds()
    return (1 - lam) * lo0 + lam * lo1, (1 - lam) * hi0 + lam * hi1


def box_phi_oracle(lo1, hi1, lo2, hi2, nk, kind):
    """Exact phi values for two boxes via componentwise gaps/spans."""
    from pipedist import norm_value

    if kind == "min":
        # closest points componentwise
        gap = np.maximum(np.maximum(lo1 - hi2, lo2 - hi1), 0.0)
        return norm_value(gap, nk)
    span = np.maximum(np.abs(hi1 - lo2), np.abs(hi2 - lo1))
    return norm_value(span, nk)
