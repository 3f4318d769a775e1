"""Point norms used to compare trajectory values.

Two norms are supported, both of the shape needed for time-explicit
curves where the last coordinate carries the clock value:

* ``linf``: the plain L-infinity norm on all coordinates.
* ``l1max``: ``max(||v[:split]||_1, max_i |v[split:]_i|)``, i.e. L1 on the
  leading ``split`` value coordinates and absolute value on the trailing
  time coordinate, combined with an outer max.

Both norms are pointwise maxima of finitely many linear functionals,
which is what makes every distance computation in this package reducible
to linear programs; :func:`support_directions` enumerates those
functionals.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import DimensionMismatchError


@dataclass(frozen=True)
class NormKind:
    """Norm selector; use :meth:`linf` or :meth:`l1max` to construct."""

    kind: str
    split: int = 0

    @staticmethod
    def linf() -> "NormKind":
        return NormKind("linf")

    @staticmethod
    def l1max(split: int) -> "NormKind":
        """L1 on the first ``split`` coordinates, |.| on the rest, outer max."""
        if split < 1:
            raise ValueError("l1max split must be >= 1")
        return NormKind("l1max", split)

    def check_dim(self, dim: int) -> None:
        if self.kind == "l1max" and not 0 < self.split < dim:
            raise DimensionMismatchError(
                f"l1max split {self.split} invalid for dimension {dim}"
            )


def norm_value(v, nk: NormKind) -> float:
    """Evaluate ``nk`` at the point ``v``."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise DimensionMismatchError("norm_value expects a vector")
    if nk.kind == "linf":
        return float(np.max(np.abs(v))) if v.size else 0.0
    nk.check_dim(v.size)
    value_part = float(np.sum(np.abs(v[: nk.split])))
    time_part = float(np.max(np.abs(v[nk.split :])))
    return max(value_part, time_part)


def support_directions(nk: NormKind, dim: int) -> np.ndarray:
    """Directions ``c`` with ``||v|| = max_c c.v``; closed under negation.

    For linf these are the 2*dim signed unit vectors. For l1max they are
    the 2^split sign patterns on the value block plus the signed unit
    vectors of the trailing block (2^split + 2*(dim-split) rows total).
    """
    if dim < 1:
        raise DimensionMismatchError("dimension must be positive")
    if nk.kind == "linf":
        eye = np.eye(dim)
        return np.vstack([eye, -eye])
    nk.check_dim(dim)
    s = nk.split
    dirs = []
    for signs in product((1.0, -1.0), repeat=s):
        row = np.zeros(dim)
        row[:s] = signs
        dirs.append(row)
    for i in range(s, dim):
        row = np.zeros(dim)
        row[i] = 1.0
        dirs.append(row)
        dirs.append(-row)
    return np.array(dirs)
