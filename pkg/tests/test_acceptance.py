"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they complete. All random data is seeded; tolerances are fixed here and
nowhere else.
"""

import time

import numpy as np
import pytest

from pipedist import (
    NormKind,
    PhiKind,
    PipelineOptions,
    Polytope,
    Ppr,
    SampledPipe,
    coarse_upper_bound,
    compute_bounds,
    decide_min,
    decide_reachable,
    decide_var,
    edge_interval_min,
    free_at,
    lift_time_explicit,
    phi_max,
    run_pipeline,
)
from pipedist.oracle import pipe_min_max, skorokhod_grid

from helpers import random_box_ppr, random_fsb, reach_oracle

LINF = NormKind.linf()


def report(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    print(line, flush=True)
    assert ok, line


# ---------------------------------------------------------------------------
# shared instance generators


def separated_box_pipes(rng, m=3, width_hi=0.5):
    """Two 1d box pipes whose boxes stay value-separated.

    Facing box endpoints are grid points of the trace oracle, so its
    grid-3 enumeration contains (near-)optimal trace pairs.
    """
    times = np.arange(m + 1, dtype=float)
    centers1 = rng.uniform(-0.2, 0.2) + np.cumsum(
        np.concatenate([[0.0], rng.uniform(-0.15, 0.15, m)])
    )
    centers2 = centers1 + rng.uniform(0.8, 1.6, m + 1)
    pipes = []
    for centers in (centers1, centers2):
        widths = rng.uniform(0.05, width_hi, m + 1)
        pipes.append(
            SampledPipe(
                times,
                tuple(
                    Polytope.box([c - w / 2], [c + w / 2])
                    for c, w in zip(centers, widths)
                ),
            )
        )
    return pipes[0], pipes[1]


def singleton_pipes(rng, max_m=5):
    m = int(rng.integers(1, max_m + 1))
    times = np.arange(m + 1, dtype=float)
    v1 = rng.uniform(-1, 1, m + 1)
    v2 = rng.uniform(-1, 1, m + 1)
    sp1 = SampledPipe(times, tuple(Polytope.point([v]) for v in v1))
    sp2 = SampledPipe(times, tuple(Polytope.point([v]) for v in v2))
    return sp1, sp2, times, v1, v2


class _TimedInstances(list):
    elapsed = 0.0


@pytest.fixture(scope="module")
def box_instances():
    rng = np.random.default_rng(2024)
    out = _TimedInstances()
    start = time.perf_counter()
    for _ in range(25):
        sp1, sp2 = separated_box_pipes(rng)
        bounds = run_pipeline(sp1, sp2, PipelineOptions(bits=16))
        r1, r2 = lift_time_explicit(sp1), lift_time_explicit(sp2)
        omin, omax = pipe_min_max(r1, r2, LINF, grid=3, refinement=50)
        out.append((r1, r2, bounds, omin, omax))
    out.elapsed = time.perf_counter() - start
    return out


@pytest.fixture(scope="module")
def singleton_instances():
    rng = np.random.default_rng(77)
    out = []
    for _ in range(25):
        sp1, sp2, times, v1, v2 = singleton_pipes(rng)
        bounds = run_pipeline(sp1, sp2, PipelineOptions(bits=16))
        sk = skorokhod_grid(times, v1, times, v2, LINF, 400)
        out.append((lift_time_explicit(sp1), lift_time_explicit(sp2),
                    bounds, sk))
    return out


# ---------------------------------------------------------------------------
# criteria


def test_criterion_1_min_distance_matches_trace_oracle(box_instances):
    worst = max(abs(b.beta_min - omin) for _, _, b, omin, _ in box_instances)
    elapsed = box_instances.elapsed
    report(
        1,
        worst <= 0.05 and elapsed < 300.0,
        f"|beta_min - oracle min| <= 0.05 on 25 box instances "
        f"(worst {worst:.4f}, computed in {elapsed:.0f}s < 300s)",
    )


def test_criterion_2_sandwich(box_instances):
    worst_upper = max(omax - b.beta_max for _, _, b, _, omax in box_instances)
    worst_lower = max(b.beta_min - omin for _, _, b, omin, _ in box_instances)
    ok = worst_upper <= 0.05 and worst_lower <= 0.05
    report(
        2,
        ok,
        f"oracle max <= beta_max + 0.05 and beta_min <= oracle min + 0.05 "
        f"(worst excess {max(worst_upper, worst_lower):.4f})",
    )


def test_criterion_3_skorokhod_equals_frechet(singleton_instances):
    worst_sk = max(abs(b.beta_min - sk) for _, _, b, sk in singleton_instances)
    worst_gap = max(
        abs(b.beta_max - b.beta_min) for _, _, b, _ in singleton_instances
    )
    ok = worst_sk <= 0.05 and worst_gap <= 0.05
    report(
        3,
        ok,
        f"singleton pipes: |beta_min - skorokhod oracle| <= 0.05 "
        f"(worst {worst_sk:.4f}), beta_max - beta_min <= 0.05 "
        f"(worst {worst_gap:.4f})",
    )


def test_criterion_4_cell_convexity():
    rng = np.random.default_rng(4)
    violations = 0
    checks = 0
    for _ in range(10):
        r1 = random_box_ppr(rng, 2, 1, width_hi=0.6)
        r2 = random_box_ppr(rng, 2, 1, width_hi=0.6)
        delta = 0.75 * phi_max(r1.samples[1], r2.samples[1], LINF)
        for phi in (PhiKind.MIN, PhiKind.MAX):
            done = 0
            attempts = 0
            while done < 200 and attempts < 4000:
                attempts += 1
                ci = int(rng.integers(0, r1.m))
                cj = int(rng.integers(0, r2.m))
                a = (ci + rng.uniform(0, 1), cj + rng.uniform(0, 1))
                b = (ci + rng.uniform(0, 1), cj + rng.uniform(0, 1))
                if not free_at(r1, r2, a[0], a[1], delta, phi, LINF):
                    continue
                if not free_at(r1, r2, b[0], b[1], delta, phi, LINF):
                    continue
                done += 1
                checks += 1
                mid = (0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]))
                if not free_at(r1, r2, mid[0], mid[1], delta, phi, LINF):
                    violations += 1
    report(
        4,
        violations == 0 and checks >= 1000,
        f"cell convexity: {violations} violations in {checks} free-pair "
        f"midpoint checks",
    )


def test_criterion_5_decision_monotonicity():
    rng = np.random.default_rng(5)
    violations = 0
    for _ in range(10):
        r1 = random_box_ppr(rng, 2, 1, width_hi=0.5)
        r2 = random_box_ppr(rng, 2, 1, width_hi=0.5)
        upper = coarse_upper_bound(r1, r2, LINF) * 1.1 + 0.05
        deltas = np.linspace(0.0, upper, 20)
        for decide in (
            lambda d: decide_min(r1, r2, float(d), LINF),
            lambda d: decide_var(r1, r2, float(d), LINF, k=32),
        ):
            answers = [decide(d) for d in deltas]
            violations += sum(
                1 for a, b in zip(answers, answers[1:]) if a and not b
            )
    report(5, violations == 0,
           f"decide_min/decide_var monotone over 20 deltas x 10 instances "
           f"({violations} violations)")


def test_criterion_6_coarse_bound_dominates(box_instances, singleton_instances):
    worst = -np.inf
    for r1, r2, bounds, *_ in list(box_instances) + [
        (a, b, c) for a, b, c, _ in singleton_instances
    ]:
        u = coarse_upper_bound(r1, r2, LINF)
        worst = max(worst, bounds.beta_max - u)
    report(6, worst <= 1e-9,
           f"U >= beta_max on all criterion 1-3 instances "
           f"(worst excess {worst:.2e})")


def test_criterion_7_min_edge_lp_equals_dense_scan():
    rng = np.random.default_rng(7)
    step = 1e-3
    lambdas = np.arange(0.0, 1.0 + step / 2, step)
    worst = 0.0
    mismatches = 0
    for _ in range(50):
        dim = int(rng.integers(1, 3))
        p0 = _rand_box(rng, dim)
        p1 = _rand_box(rng, dim)
        q = _rand_box(rng, dim, shift=rng.uniform(-1.0, 1.0))
        delta = rng.uniform(0.05, 1.0)
        got = edge_interval_min(p0, p1, q, delta, LINF)
        moving = Ppr((p0, p1))
        fixed = Ppr((q,))
        frees = np.array([
            free_at(moving, fixed, float(t), 0.0, delta, PhiKind.MIN, LINF)
            for t in lambdas
        ])
        hits = np.flatnonzero(frees)
        if hits.size == 0 or got is None:
            mismatches += 0 if (hits.size == 0) == (got is None) else 1
            continue
        worst = max(worst, abs(got.lo - lambdas[hits[0]]),
                    abs(got.hi - lambdas[hits[-1]]))
    ok = mismatches == 0 and worst <= 2e-3
    report(7, ok,
           f"edge LP vs dense scan on 50 triples: worst endpoint error "
           f"{worst:.2e}, {mismatches} emptiness mismatches")


def _rand_box(rng, dim, shift=0.0):
    lo = rng.uniform(-0.8, 0.4, dim) + shift
    return Polytope.box(lo, lo + rng.uniform(0.1, 0.8, dim))


def test_criterion_8_reachability_matches_path_search():
    rng = np.random.default_rng(8)
    disagreements = 0
    for _ in range(100):
        m1 = int(rng.integers(1, 4))
        m2 = int(rng.integers(1, 4))
        fsb = random_fsb(rng, m1, m2, snap=1e-2)
        if decide_reachable(fsb)[0] != reach_oracle(fsb, step=1e-2):
            disagreements += 1
    report(8, disagreements == 0,
           f"decide_reachable vs exhaustive path search on 100 random "
           f"grids ({disagreements} disagreements)")


def test_criterion_9_sliding_window():
    rng = np.random.default_rng(9)
    bits = 14
    slack = 2 ** -bits + 1e-9
    worst_repro = 0.0
    monotone_violations = 0
    for _ in range(10):
        r1 = random_box_ppr(rng, 3, 1, width_hi=0.5)
        r2 = random_box_ppr(rng, 3, 1, width_hi=0.5)
        free = compute_bounds(r1, r2, LINF, k=32, bits=bits, validate=False)
        full_window = compute_bounds(
            r1, r2, LINF, k=32, bits=bits, window=max(r1.m, r2.m),
            validate=False,
        )
        worst_repro = max(
            worst_repro, abs(free.beta_max - full_window.beta_max)
        )
        previous = None
        for w in (1, 2, 3):
            banded = compute_bounds(
                r1, r2, LINF, k=32, bits=bits, window=w, validate=False
            )
            if previous is not None and banded.beta_max > previous + slack:
                monotone_violations += 1
            previous = banded.beta_max
    ok = worst_repro <= slack and monotone_violations == 0
    report(9, ok,
           f"window max(m1,m2) reproduces beta_max (worst gap "
           f"{worst_repro:.2e}); nonincreasing in W "
           f"({monotone_violations} violations)")


def test_criterion_10_performance():
    rng = np.random.default_rng(10)

    def box_pipe(m, dim, offset=0.0):
        center = rng.uniform(-0.5, 0.5, dim) + offset
        samples = []
        for k in range(m + 1):
            half = rng.uniform(0.05, 0.4, dim) / 2
            samples.append(Polytope.box(
                np.append(center - half, float(k)),
                np.append(center + half, float(k)),
            ))
            center = center + rng.uniform(-0.3, 0.3, dim)
        return Ppr(tuple(samples))

    # warm-up: JIT compilation happens outside the timed region
    compute_bounds(box_pipe(3, 3), box_pipe(3, 3, 0.4), LINF, k=32, bits=4,
                   validate=False)

    times = {}
    for m in (10, 20, 40, 50):
        r1 = box_pipe(m, 3)
        r2 = box_pipe(m, 3, 0.4)
        start = time.perf_counter()
        compute_bounds(r1, r2, LINF, k=32, bits=16, validate=False)
        times[m] = time.perf_counter() - start

    slope = np.polyfit(
        np.log([10, 20, 40]), np.log([times[10], times[20], times[40]]), 1
    )[0]
    ok = times[50] < 60.0 and slope <= 2.3
    report(10, ok,
           f"m=50 d=3 K=32 B=16 in {times[50]:.1f}s (< 60s); log-log slope "
           f"{slope:.2f} over m in {{10,20,40}} (<= 2.3)")
