"""Monotone-curve reachability over a free-space boundary.

Decides whether a curve that never decreases in either parameter can run
from (0, 0) to (m1, m2) through the free space known via its
cell-boundary intervals. Cell interiors never need to be examined:
convexity of each cell's free region means any two free boundary points
of a cell are joined by a free segment, so a curve is equivalent to a
chain of free edge-interval points that is monotone across each cell and
gap-free along grid lines. Corner flags gate the start and goal points.

The propagation is the classic dynamic program over cell boundaries:
crossing a cell from its left edge reaches the whole free interval of
the top and right edges, crossing from the bottom edge clips the
parallel (top) interval below the lowest reachable entry point, and
movement along a grid line continues through a shared line point only
when the adjacent intervals actually touch it.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import ParameterOutOfRangeError
from .freespace import EdgeInterval, FreeSpaceBoundary, MaybeInterval

# Endpoint/touch tolerance: curves may touch edge endpoints, and
# single-point intervals are traversable.
REACH_TOL = 1e-9


@dataclass
class ReachBoundary:
    """Reachable sub-intervals of every edge, same layout as the input.

    Every reachable interval is contained in the corresponding free
    interval; ``corners`` flags free corners that some curve attains.
    """

    horizontal: List[List[MaybeInterval]]
    vertical: List[List[MaybeInterval]]
    corners: np.ndarray


def _clip(free: MaybeInterval, lo_entry: Optional[float]) -> MaybeInterval:
    """Free interval clipped below the lowest reachable entry point."""
    if free is None or lo_entry is None:
        return None
    if lo_entry <= free.lo + REACH_TOL:
        return free
    if lo_entry > free.hi + REACH_TOL:
        return None
    return EdgeInterval(min(lo_entry, free.hi), free.hi)


def _reaches_end(interval: MaybeInterval) -> bool:
    return interval is not None and interval.hi >= 1.0 - REACH_TOL


def _starts_at_zero(free: MaybeInterval) -> bool:
    return free is not None and free.lo <= REACH_TOL


def decide_reachable(fsb: FreeSpaceBoundary) -> Tuple[bool, ReachBoundary]:
    """Monotone reachability from (0,0) to (m1,m2) plus per-edge detail."""
    m1, m2 = fsb.m1, fsb.m2
    rh: List[List[MaybeInterval]] = [[None] * m2 for _ in range(m1 + 1)]
    rv: List[List[MaybeInterval]] = [[None] * (m2 + 1) for _ in range(m1)]
    rc = np.zeros((m1 + 1, m2 + 1), dtype=bool)

    if not fsb.corners[0, 0] or not fsb.corners[m1, m2]:
        return False, ReachBoundary(rh, rv, rc)
    rc[0, 0] = True

    for i in range(m1 + 1):
        for j in range(m2 + 1):
            if j < m2:
                free = fsb.horizontal[i][j]
                entry = None  # lowest reachable entry coordinate, None = no entry
                if i > 0:
                    if rv[i - 1][j] is not None:
                        entry = 0.0  # perpendicular entry spans the edge
                    elif rh[i - 1][j] is not None:
                        entry = rh[i - 1][j].lo
                if entry != 0.0 and _starts_at_zero(free):
                    # movement along the grid line through the point (i, j)
                    if (i == 0 and j == 0) or (
                        j > 0 and _reaches_end(rh[i][j - 1])
                    ):
                        entry = 0.0
                rh[i][j] = _clip(free, entry)
            if i < m1:
                free = fsb.vertical[i][j]
                entry = None
                if j > 0:
                    if rh[i][j - 1] is not None:
                        entry = 0.0
                    elif rv[i][j - 1] is not None:
                        entry = rv[i][j - 1].lo
                if entry != 0.0 and _starts_at_zero(free):
                    if (i == 0 and j == 0) or (
                        i > 0 and _reaches_end(rv[i - 1][j])
                    ):
                        entry = 0.0
                rv[i][j] = _clip(free, entry)

    # Reached corners, for reporting: a free corner attained by some curve
    # as an endpoint of a reachable interval.
    for i in range(m1 + 1):
        for j in range(m2 + 1):
            if not fsb.corners[i, j]:
                continue
            attained = i == 0 and j == 0
            if not attained and j > 0 and _reaches_end(rh[i][j - 1]):
                attained = True
            if not attained and i > 0 and _reaches_end(rv[i - 1][j]):
                attained = True
            if (
                not attained
                and j < m2
                and rh[i][j] is not None
                and rh[i][j].lo <= REACH_TOL
            ):
                attained = True
            if (
                not attained
                and i < m1
                and rv[i][j] is not None
                and rv[i][j].lo <= REACH_TOL
            ):
                attained = True
            rc[i, j] = attained

    if m1 == 0 and m2 == 0:
        reached = True  # both corner gates passed above
    else:
        reached = (m2 > 0 and _reaches_end(rh[m1][m2 - 1])) or (
            m1 > 0 and _reaches_end(rv[m1 - 1][m2])
        )
    rc[m1, m2] = rc[m1, m2] and reached
    return reached, ReachBoundary(rh, rv, rc)


def apply_window(fsb: FreeSpaceBoundary, w: int) -> FreeSpaceBoundary:
    """Empty the edges of all cells outside the band |i - j| <= w.

    An edge shared with an in-band cell is kept. Corner flags are left
    unchanged; w must be a positive integer.
    """
    if w < 1:
        raise ParameterOutOfRangeError("window must be >= 1")
    m1, m2 = fsb.m1, fsb.m2

    def h_in_band(i, j):
        if m1 == 0:  # cell-less boundary edges stay
            return True
        return (i > 0 and abs(i - 1 - j) <= w) or (i < m1 and abs(i - j) <= w)

    def v_in_band(i, j):
        if m2 == 0:
            return True
        return (j > 0 and abs(i - j + 1) <= w) or (j < m2 and abs(i - j) <= w)

    horizontal = [
        [fsb.horizontal[i][j] if h_in_band(i, j) else None for j in range(m2)]
        for i in range(m1 + 1)
    ]
    vertical = [
        [fsb.vertical[i][j] if v_in_band(i, j) else None for j in range(m2 + 1)]
        for i in range(m1)
    ]
    return FreeSpaceBoundary(horizontal, vertical, fsb.corners.copy())
