"""Free-space diagrams at a sweep of thresholds.
=============================================

Exports the free-space boundary of two pipes at several deltas and
renders the edge intervals with matplotlib (written to
free_space_sweep.png next to this script).
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from pipedist import (
    NormKind,
    PhiKind,
    Polytope,
    SampledPipe,
    build_boundary,
    decide_reachable,
    lift_time_explicit,
)

times = np.arange(4.0)
wave1 = [0.0, 0.6, 0.2, 0.9]
wave2 = [0.15, 0.3, 0.65, 0.8]
pipe1 = SampledPipe(times, tuple(
    Polytope.box([v - 0.1], [v + 0.1]) for v in wave1))
pipe2 = SampledPipe(times, tuple(
    Polytope.box([v - 0.1], [v + 0.1]) for v in wave2))
r1, r2 = lift_time_explicit(pipe1), lift_time_explicit(pipe2)
nk = NormKind.linf()

deltas = (0.35, 0.55, 0.8)
fig, axes = plt.subplots(1, len(deltas), figsize=(4 * len(deltas), 4))
for ax, delta in zip(axes, deltas):
    fsb = build_boundary(r1, r2, delta, PhiKind.MIN, nk)
    reachable, _ = decide_reachable(fsb)
    # pipe-2 parameter drawn on x, pipe-1 on y
    for i in range(fsb.m1 + 1):
        for j in range(fsb.m2):
            iv = fsb.horizontal[i][j]
            if iv is not None:
                ax.plot([j + iv.lo, j + iv.hi], [i, i], lw=4, color="tab:blue")
    for i in range(fsb.m1):
        for j in range(fsb.m2 + 1):
            iv = fsb.vertical[i][j]
            if iv is not None:
                ax.plot([j, j], [i + iv.lo, i + iv.hi], lw=4, color="tab:blue")
    ii, jj = np.nonzero(fsb.corners)
    ax.scatter(jj, ii, s=30, color="tab:red", zorder=3)
    ax.set_xticks(range(fsb.m2 + 1))
    ax.set_yticks(range(fsb.m1 + 1))
    ax.grid(alpha=0.3)
    ax.set_title(f"delta = {delta}  reachable: {reachable}")
    ax.set_xlabel("pipe 2 parameter")
    ax.set_ylabel("pipe 1 parameter")

fig.tight_layout()
out = pathlib.Path(__file__).with_name("free_space_sweep.png")
fig.savefig(out, dpi=110)
print(f"wrote {out}")
for delta in deltas:
    fsb = build_boundary(r1, r2, delta, PhiKind.MIN, nk)
    print(f"delta {delta}: reachable = {decide_reachable(fsb)[0]}")
