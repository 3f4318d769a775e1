"""Dense two-phase simplex kernel.

The kernel solves  min c.x  s.t.  A x (<=|=) b, x >= 0  on a dense
tableau. Slack columns double as the initial basis wherever the row sign
allows; only the remaining rows receive phase-1 artificials. Pricing is
Dantzig (most negative reduced cost) with a switch to Bland's rule after
``BLAND_AFTER_FACTOR * (rows + cols)`` iterations to break cycling; the
hard iteration cap marks the solve as a numerical failure.

Compiled with numba when available; the pure-Python fallback runs the
same code object uncompiled.
"""

import numpy as np

from ._jit import njit


# Outcome codes shared with lp.solve.
OPTIMAL = 0
INFEASIBLE = 1
UNBOUNDED = 2
NUMERICAL_FAILURE = 3

# Row senses.
LE = 0
EQ = 1

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-9
BLAND_AFTER_FACTOR = 5
MAX_ITER_FACTOR = 50


@njit(cache=True)
def _pivot(tab, basis, row, col, width):
    nrows = tab.shape[0]
    piv = tab[row, col]
    inv = 1.0 / piv
    for j in range(width):
        tab[row, j] *= inv
    for r in range(nrows):
        if r != row:
            f = tab[r, col]
            if f != 0.0:
                for j in range(width):
                    tab[r, j] -= f * tab[row, j]
    basis[row] = col


@njit(cache=True)
def _run_simplex(tab, basis, m, ncols, rhs_col, width):
    """Iterate row m (the cost row) of ``tab`` to optimality."""
    bland_after = BLAND_AFTER_FACTOR * (m + ncols)
    max_iter = MAX_ITER_FACTOR * (m + ncols) + 200
    it = 0
    while True:
        it += 1
        if it > max_iter:
            return NUMERICAL_FAILURE
        col = -1
        if it <= bland_after:
            best = -PIVOT_TOL
            for j in range(ncols):
                if tab[m, j] < best:
                    best = tab[m, j]
                    col = j
        else:  # Bland: leftmost improving column
            for j in range(ncols):
                if tab[m, j] < -PIVOT_TOL:
                    col = j
                    break
        if col < 0:
            return OPTIMAL
        row = -1
        best_ratio = np.inf
        for i in range(m):
            a = tab[i, col]
            if a > PIVOT_TOL:
                ratio = tab[i, rhs_col] / a
                if ratio < best_ratio - 1e-12 or (
                    ratio < best_ratio + 1e-12 and (row < 0 or basis[i] < basis[row])
                ):
                    best_ratio = ratio
                    row = i
        if row < 0:
            return UNBOUNDED
        _pivot(tab, basis, row, col, width)


@njit(cache=True)
def solve_mixed(a, b, senses, c):
    """Solve min c.x s.t. a x <= b (sense LE) / a x = b (sense EQ), x >= 0.

    Returns (status, x, objective); ``x`` is meaningful only for OPTIMAL.
    """
    m, n = a.shape
    x = np.zeros(n)

    n_slack = 0
    for i in range(m):
        if senses[i] == LE:
            n_slack += 1
    # Worst case every row needs an artificial; trim the cost row scan below.
    width = n + n_slack + m + 1
    tab = np.zeros((m + 1, width))
    basis = np.empty(m, dtype=np.int64)

    slack_at = n
    art_at = n + n_slack
    n_art = 0
    for i in range(m):
        s = 1.0 if b[i] >= 0.0 else -1.0
        for j in range(n):
            tab[i, j] = s * a[i, j]
        rhs = s * b[i]
        if senses[i] == LE:
            tab[i, slack_at] = s
            if s > 0.0:
                basis[i] = slack_at
            else:
                tab[i, art_at + n_art] = 1.0
                basis[i] = art_at + n_art
                n_art += 1
            slack_at += 1
        else:
            tab[i, art_at + n_art] = 1.0
            basis[i] = art_at + n_art
            n_art += 1
        tab[i, width - 1] = rhs
    ncols1 = n + n_slack + n_art
    rhs_col = width - 1
    # Compact: move the rhs next to the last used column for cheaper pivots.
    for i in range(m + 1):
        tab[i, ncols1] = tab[i, rhs_col]
    rhs_col = ncols1
    width = ncols1 + 1

    if n_art > 0:
        # Phase 1: min sum of artificials, written as reduced costs.
        for j in range(width):
            s = 0.0
            for i in range(m):
                if basis[i] >= art_at:
                    s += tab[i, j]
            tab[m, j] = -s
        for i in range(m):
            bi = basis[i]
            if bi >= art_at:
                tab[m, bi] = 0.0

        status = _run_simplex(tab, basis, m, ncols1, rhs_col, width)
        if status != OPTIMAL:
            return NUMERICAL_FAILURE, x, 0.0
        scale = 1.0
        for i in range(m):
            v = abs(tab[i, rhs_col])
            if v > scale:
                scale = v
        if -tab[m, rhs_col] > FEAS_TOL * scale:
            return INFEASIBLE, x, 0.0
        # Drive leftover artificials out of the basis (degenerate rows).
        for i in range(m):
            if basis[i] >= art_at:
                col = -1
                for j in range(art_at):
                    if abs(tab[i, j]) > PIVOT_TOL:
                        col = j
                        break
                if col >= 0:
                    _pivot(tab, basis, i, col, width)
                # else: row redundant in the original columns.

    # Phase 2 over original + slack columns only.
    ncols2 = n + n_slack
    for j in range(ncols2):
        tab[m, j] = c[j] if j < n else 0.0
    tab[m, rhs_col] = 0.0
    for j in range(ncols2, ncols1):
        tab[m, j] = 0.0
    for i in range(m):
        bi = basis[i]
        if bi >= ncols2:
            continue  # leftover artificial pinned at zero
        cb = c[bi] if bi < n else 0.0
        if cb != 0.0:
            for j in range(width):
                tab[m, j] -= cb * tab[i, j]

    status = _run_simplex(tab, basis, m, ncols2, rhs_col, width)
    if status != OPTIMAL:
        return status, x, 0.0

    for i in range(m):
        bi = basis[i]
        if bi < n:
            x[bi] = tab[i, rhs_col]
    obj = 0.0
    for j in range(n):
        obj += c[j] * x[j]
    return OPTIMAL, x, obj
