"""Linear programming layer: problem types, a self-contained solver, and
the norm-constraint linearizations every distance computation relies on.

The solver is the dense two-phase simplex in :mod:`pipedist._simplex`
(Dantzig pricing, Bland fallback). ``LinearSystem`` is the incremental
builder used throughout the package: variables carry optional bounds,
rows are ``<=`` or ``==``, and :meth:`LinearSystem.kernel_base` lowers
everything to the nonnegative standard form the kernel understands. The
lowering is objective-independent, so one :class:`KernelForm` can be
solved repeatedly with different objectives or right-hand sides; the
free-space code leans on that to reuse per-edge LPs across a binary
search.
"""

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import _simplex
from .errors import (
    DimensionMismatchError,
    InfeasibleRegionError,
    NumericalFailureError,
    UnboundedNormError,
)
from .norms import NormKind, support_directions

FEAS_TOL = 1e-9

LE = "<="
EQ = "=="


@dataclass(frozen=True)
class LpOutcome:
    """Result of one solve: status plus optimum when it exists."""

    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[float] = None
    point: Optional[np.ndarray] = None

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


@dataclass
class LpProblem:
    """General-form LP: objective + sense, mixed rows, optional var bounds."""

    objective: np.ndarray
    maximize: bool = False
    constraints: list = field(default_factory=list)  # (row, "<="|"==", rhs)
    lower: Optional[list] = None  # per-variable optional lower bounds
    upper: Optional[list] = None


class AffineExpr:
    """Vector-valued affine expression ``coef @ x[idx] + const``."""

    def __init__(self, coef, idx, const):
        self.coef = np.asarray(coef, dtype=float)
        self.idx = np.asarray(idx, dtype=int)
        self.const = np.asarray(const, dtype=float)
        if self.coef.ndim != 2 or self.coef.shape[1] != self.idx.size:
            raise DimensionMismatchError("AffineExpr coef/idx shape mismatch")
        if self.const.shape != (self.coef.shape[0],):
            raise DimensionMismatchError("AffineExpr const shape mismatch")

    @property
    def dim(self) -> int:
        return self.coef.shape[0]

    @staticmethod
    def of_vars(idx, scale=1.0, const=None) -> "AffineExpr":
        """Identity expression over the variable block ``idx``, scaled."""
        idx = np.asarray(idx, dtype=int)
        d = idx.size
        c = np.zeros(d) if const is None else np.asarray(const, dtype=float)
        return AffineExpr(scale * np.eye(d), idx, c)

    def __add__(self, other: "AffineExpr") -> "AffineExpr":
        if self.dim != other.dim:
            raise DimensionMismatchError("AffineExpr dimension mismatch")
        return AffineExpr(
            np.hstack([self.coef, other.coef]),
            np.concatenate([self.idx, other.idx]),
            self.const + other.const,
        )

    def __sub__(self, other: "AffineExpr") -> "AffineExpr":
        return self + other.scaled(-1.0)

    def scaled(self, s: float) -> "AffineExpr":
        return AffineExpr(s * self.coef, self.idx, s * self.const)

    def row(self, direction) -> tuple:
        """Sparse row (idx, values, const) of ``direction . expr``.

        Duplicate variable references are consolidated.
        """
        direction = np.asarray(direction, dtype=float)
        vals = direction @ self.coef
        uidx, inv = np.unique(self.idx, return_inverse=True)
        uvals = np.zeros(uidx.size)
        np.add.at(uvals, inv, vals)
        return uidx, uvals, float(direction @ self.const)

    def value_at(self, x) -> np.ndarray:
        return self.coef @ np.asarray(x, dtype=float)[self.idx] + self.const


class KernelForm:
    """Objective-independent standard form of a :class:`LinearSystem`.

    Holds the lowered constraint matrix plus the variable mapping needed
    to build objectives and recover original coordinates. ``b`` may be
    overridden per solve, which is how delta-parameterized LPs are
    re-solved cheaply.
    """

    def __init__(self, a, b, senses, col_of, neg_col, shift):
        self.a = a
        self.b = b
        self.senses = senses
        self._col_of = col_of
        self._neg_col = neg_col
        self._shift = shift

    def objective(self, idx, vals, maximize=False):
        """Kernel cost vector for optimizing ``vals . x[idx]``."""
        idx = np.asarray(idx, dtype=int)
        vals = np.asarray(vals, dtype=float)
        c = np.zeros(self.a.shape[1])
        sign = -1.0 if maximize else 1.0
        np.add.at(c, self._col_of[idx], sign * vals)
        mask = self._neg_col[idx] >= 0
        if mask.any():
            np.add.at(c, self._neg_col[idx[mask]], -sign * vals[mask])
        obj_shift = float(vals @ self._shift[idx])
        return c, obj_shift, sign

    def recover(self, x_std):
        x = x_std[self._col_of] + self._shift
        has_neg = self._neg_col >= 0
        x[has_neg] -= x_std[self._neg_col[has_neg]]
        return x

    def solve(self, idx, vals, maximize=False, b_override=None) -> LpOutcome:
        c, obj_shift, sign = self.objective(idx, vals, maximize)
        b = self.b if b_override is None else b_override
        status, x_std, obj = _simplex.solve_mixed(self.a, b, self.senses, c)
        if status == _simplex.OPTIMAL:
            return LpOutcome(
                "optimal", sign * obj + obj_shift, self.recover(x_std)
            )
        if status == _simplex.INFEASIBLE:
            return LpOutcome("infeasible")
        if status == _simplex.UNBOUNDED:
            return LpOutcome("unbounded")
        raise NumericalFailureError("simplex did not converge")


class LinearSystem:
    """Incremental LP builder over variables with optional bounds."""

    def __init__(self):
        self.n = 0
        self.lower: list = []
        self.upper: list = []
        self._rows: list = []  # (idx, vals, sense, rhs)

    def add_vars(self, k: int, lo=None, hi=None) -> np.ndarray:
        start = self.n
        self.n += k
        self.lower.extend([lo] * k)
        self.upper.extend([hi] * k)
        return np.arange(start, self.n)

    def add_var(self, lo=None, hi=None) -> int:
        return int(self.add_vars(1, lo, hi)[0])

    def add_row(self, idx, vals, sense: str, rhs: float) -> None:
        idx = np.asarray(idx, dtype=int)
        vals = np.asarray(vals, dtype=float)
        if idx.size and idx.max() >= self.n:
            raise DimensionMismatchError("row references unknown variable")
        self._rows.append((idx, vals, sense, float(rhs)))

    def add_le(self, idx, vals, rhs: float) -> None:
        self.add_row(idx, vals, LE, rhs)

    def add_eq(self, idx, vals, rhs: float) -> None:
        self.add_row(idx, vals, EQ, rhs)

    def add_polytope(self, polytope) -> np.ndarray:
        """Fresh variable block constrained to lie in ``polytope``."""
        idx = self.add_vars(polytope.dim)
        for row, rhs in zip(polytope.a, polytope.b):
            self.add_le(idx, row, rhs)
        return idx

    @property
    def num_rows(self) -> int:
        return len(self._rows)

    def kernel_base(self) -> KernelForm:
        """Lower to kernel form; original rows first, bound rows after.

        Variables with a lower bound become one shifted column; free
        variables get a split pair. Finite upper bounds become rows.
        """
        col_of = np.empty(self.n, dtype=int)
        neg_col = np.full(self.n, -1, dtype=int)
        shift = np.zeros(self.n)
        ncols = 0
        extra_rows = []
        for j in range(self.n):
            lo, hi = self.lower[j], self.upper[j]
            col_of[j] = ncols
            ncols += 1
            if lo is None:
                neg_col[j] = ncols
                ncols += 1
            else:
                shift[j] = lo
            if hi is not None:
                extra_rows.append((j, hi))

        m = len(self._rows) + len(extra_rows)
        a = np.zeros((m, ncols))
        b = np.empty(m)
        senses = np.empty(m, dtype=np.int8)
        for i, (idx, vals, sense, rhs) in enumerate(self._rows):
            np.add.at(a[i], col_of[idx], vals)
            mask = neg_col[idx] >= 0
            if mask.any():
                np.add.at(a[i], neg_col[idx[mask]], -vals[mask])
            b[i] = rhs - vals @ shift[idx]
            senses[i] = _simplex.LE if sense == LE else _simplex.EQ
        for k, (j, hi) in enumerate(extra_rows):
            i = len(self._rows) + k
            a[i, col_of[j]] = 1.0
            if neg_col[j] >= 0:
                a[i, neg_col[j]] = -1.0
            b[i] = hi - shift[j]
            senses[i] = _simplex.LE
        return KernelForm(a, b, senses, col_of, neg_col, shift)

    def solve(self, objective_idx, objective_vals, maximize=False) -> LpOutcome:
        """Optimize a sparse objective over the current system."""
        return self.kernel_base().solve(objective_idx, objective_vals, maximize)

    def feasible_point(self) -> Optional[np.ndarray]:
        """A feasible point, or None when the system is infeasible."""
        out = self.solve(np.empty(0, dtype=int), np.empty(0))
        return out.point if out.is_optimal else None


def solve(problem: LpProblem) -> LpOutcome:
    """Solve a general-form :class:`LpProblem`."""
    c = np.asarray(problem.objective, dtype=float)
    n = c.size
    sys = LinearSystem()
    lower = problem.lower or [None] * n
    upper = problem.upper or [None] * n
    for j in range(n):
        sys.add_var(lower[j], upper[j])
    for row, sense, rhs in problem.constraints:
        row = np.asarray(row, dtype=float)
        if row.size != n:
            raise DimensionMismatchError("constraint row has wrong length")
        sys.add_row(np.arange(n), row, sense, rhs)
    return sys.solve(np.arange(n), c, problem.maximize)


DeltaLike = Union[float, int]


def norm_leq_constraints(
    expr: AffineExpr,
    delta: DeltaLike,
    nk: NormKind,
    sys: Optional[LinearSystem] = None,
    delta_is_var: bool = False,
) -> LinearSystem:
    """Constrain ``||expr|| <= delta`` with rows (and auxiliaries) on ``sys``.

    ``delta`` is either a nonnegative constant or, with
    ``delta_is_var=True``, the index of a system variable, in which case
    the rows stay linear with the bound moved to the left-hand side.
    For linf this is the componentwise sandwich; for l1max it is the
    classic variable-doubling: auxiliaries ``w_i >= +-expr_i`` with
    ``sum w <= delta`` on the value block, direct rows on the time block.
    """
    if sys is None:
        sys = LinearSystem()
    d = expr.dim
    if nk.kind == "l1max":
        nk.check_dim(d)

    def bound_row(idx, vals, const):
        # direction . expr + const <= delta
        if delta_is_var:
            sys.add_le(np.append(idx, int(delta)), np.append(vals, -1.0), -const)
        else:
            sys.add_le(idx, vals, float(delta) - const)

    def unit(i):
        e = np.zeros(d)
        e[i] = 1.0
        return e

    if nk.kind == "linf":
        for i in range(d):
            for s in (1.0, -1.0):
                bound_row(*expr.row(s * unit(i)))
        return sys

    s_dim = nk.split
    w = sys.add_vars(s_dim, lo=0.0)
    for i in range(s_dim):
        for s in (1.0, -1.0):
            idx, vals, const = expr.row(s * unit(i))
            # s * expr_i - w_i <= -const
            sys.add_le(np.append(idx, w[i]), np.append(vals, -1.0), -const)
    if delta_is_var:
        sys.add_le(np.append(w, int(delta)), np.append(np.ones(s_dim), -1.0), 0.0)
    else:
        sys.add_le(w, np.ones(s_dim), float(delta))
    for i in range(s_dim, d):
        for s in (1.0, -1.0):
            bound_row(*expr.row(s * unit(i)))
    return sys


def maximize_norm(expr: AffineExpr, sys: LinearSystem, nk: NormKind) -> float:
    """Maximum of ``norm_value(expr)`` over the feasible set of ``sys``.

    One LP per support direction: 2*dim for linf, 2^split plus two per
    trailing coordinate for l1max.
    """
    dirs = support_directions(nk, expr.dim)
    kf = sys.kernel_base()
    best = -np.inf
    for direction in dirs:
        idx, vals, const = expr.row(direction)
        out = kf.solve(idx, vals, maximize=True)
        if out.status == "infeasible":
            raise InfeasibleRegionError("norm maximization over empty region")
        if out.status == "unbounded":
            raise UnboundedNormError("norm maximization unbounded")
        best = max(best, out.value + const)
    return float(best)
