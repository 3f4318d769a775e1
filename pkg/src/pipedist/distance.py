"""Distance bounds between two polytope pipes.

``compute_bounds`` sandwiches the variation distance of the tracepipes
spanned by two pipes: ``beta_min`` is the pipe minimum-set distance
(a lower bound, exact up to search resolution) and ``beta_max`` is the
pipe worst-case distance (an upper bound). Both come from binary search
over threshold decisions; a decision is one free-space boundary build
plus monotone reachability.

The worst-case decision is conservative in the K-sampling sense: a true
answer always certifies the bound, a false answer is guaranteed only
when every free edge interval at that threshold is at least 1/K long.
``beta_max`` is therefore reported as the smallest threshold that was
answered true, which is always a sound upper bound.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    DegeneratePipesError,
    DimensionMismatchError,
    ParameterOutOfRangeError,
    PipedistError,
)
from .freespace import BoundaryCache, PhiKind, build_boundary
from .geometry import Ppr, validate_polytope
from .norms import NormKind
from .reachability import decide_reachable

DEFAULT_K = 64
DEFAULT_BITS = 20


@dataclass(frozen=True)
class DistanceBounds:
    """Bounds pair with the search parameters that produced it.

    ``k_sensitive`` flags that no worst-case probe answered true, so
    ``beta_max`` fell back to the coarse upper bound; a larger K may
    tighten it.
    """

    beta_min: float
    beta_max: float
    window: Optional[int]
    k: int
    bits: int
    k_sensitive: bool = False


def _check_pipes(r1: Ppr, r2: Ppr, nk: NormKind, window: Optional[int]) -> None:
    if r1.dim != r2.dim:
        raise DimensionMismatchError("pipes differ in dimension")
    nk.check_dim(r1.dim)
    if window is not None and window < 1:
        raise ParameterOutOfRangeError("window must be >= 1")


def decide_min(
    r1: Ppr,
    r2: Ppr,
    delta: float,
    nk: NormKind,
    window: Optional[int] = None,
    cache: Optional[BoundaryCache] = None,
) -> bool:
    """Is the pipe minimum-set distance at most ``delta``? Exact."""
    _check_pipes(r1, r2, nk, window)
    fsb = build_boundary(
        r1, r2, delta, PhiKind.MIN, nk, window=window, cache=cache
    )
    return decide_reachable(fsb)[0]


def decide_var(
    r1: Ppr,
    r2: Ppr,
    delta: float,
    nk: NormKind,
    k: int = DEFAULT_K,
    window: Optional[int] = None,
    cache: Optional[BoundaryCache] = None,
) -> bool:
    """Is the pipe worst-case distance at most ``delta``? Conservative.

    True certifies the bound unconditionally. False is guaranteed only
    when the free edge intervals at ``delta`` are no shorter than 1/k.
    """
    _check_pipes(r1, r2, nk, window)
    fsb = build_boundary(
        r1, r2, delta, PhiKind.MAX, nk, k=k, window=window, cache=cache
    )
    return decide_reachable(fsb)[0]


def coarse_upper_bound(
    r1: Ppr,
    r2: Ppr,
    nk: NormKind,
    cache: Optional[BoundaryCache] = None,
) -> float:
    """Upper bound on the pipe worst-case distance from one retiming.

    Matches samples diagonally and parks the shorter pipe's end against
    the longer pipe's tail:
    ``max(max_i phi_max(R1(i), R2(i)), max_j phi_max(R1(m1), R2(j)))``
    after swapping so m1 <= m2. Interpolated points between matched
    samples never exceed the endpoint values (triangle inequality).
    """
    _check_pipes(r1, r2, nk, None)
    if cache is None:
        cache = BoundaryCache(r1, r2, nk)
    table = cache.phimax_corners()  # (m1+1, m2+1) in the pipes' given order
    if r1.m > r2.m:
        table = table.T
    m1, m2 = min(r1.m, r2.m), max(r1.m, r2.m)
    diag = max(table[i, i] for i in range(m1 + 1))
    tail = max(table[m1, j] for j in range(m1, m2 + 1))
    return float(max(diag, tail, 0.0))


def _binary_search(decide, upper: float, iters: int):
    """Bisect [0, upper]; returns (smallest delta answered true, any_true).

    The upper endpoint is probed once up front so a clean run certifies
    it; if even that answers false the caller keeps ``upper`` as a
    mathematically valid but uncertified bound.
    """
    lo, hi = 0.0, upper
    any_true = decide(upper)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if decide(mid):
            hi = mid
            any_true = True
        else:
            lo = mid
    return hi, any_true


def compute_bounds(
    r1: Ppr,
    r2: Ppr,
    nk: NormKind,
    k: int = DEFAULT_K,
    bits: int = DEFAULT_BITS,
    window: Optional[int] = None,
    validate: bool = True,
) -> DistanceBounds:
    """Sandwich the tracepipe variation distance of two pipes.

    Binary-searches threshold decisions over [0, U] with U the coarse
    upper bound, for ceil(lg max(U, 1)) + bits iterations, bracketing
    each bound to width at most 2**-bits. With a window, ``window`` must
    be at least |m1 - m2| or no monotone curve can stay in band.
    """
    _check_pipes(r1, r2, nk, window)
    if k < 1 or bits < 1:
        raise ParameterOutOfRangeError("k and bits must be positive")
    if window is not None and window < abs(r1.m - r2.m):
        raise ParameterOutOfRangeError(
            f"window {window} below |m1 - m2| = {abs(r1.m - r2.m)}: "
            "no retiming can stay in band"
        )
    if validate:
        for name, pipe in (("pipe 1", r1), ("pipe 2", r2)):
            for idx, p in enumerate(pipe.samples):
                try:
                    validate_polytope(p)
                except PipedistError as exc:
                    raise DegeneratePipesError(
                        f"{name} sample {idx}: {exc}"
                    ) from exc

    cache = BoundaryCache(r1, r2, nk)
    upper = coarse_upper_bound(r1, r2, nk, cache=cache)
    if upper <= 0.0:
        return DistanceBounds(0.0, 0.0, window, k, bits)
    iters = max(math.ceil(math.log2(max(upper, 1.0))), 0) + bits

    beta_min, _ = _binary_search(
        lambda d: decide_min(r1, r2, d, nk, window=window, cache=cache),
        upper,
        iters,
    )
    beta_max, var_certified = _binary_search(
        lambda d: decide_var(r1, r2, d, nk, k=k, window=window, cache=cache),
        upper,
        iters,
    )
    return DistanceBounds(
        float(beta_min),
        float(beta_max),
        window,
        k,
        bits,
        k_sensitive=not var_certified,
    )
