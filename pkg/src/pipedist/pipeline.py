"""Instance files and the end-to-end pipeline.

An instance is a JSON document with two sampled pipes in value space:

.. code-block:: json

    {
      "pipes": [
        [{"time": 0.0, "halfspaces": {"a": [[1.0], [-1.0]], "b": [1.0, 0.0]}},
         {"time": 1.0, "halfspaces": {"a": [[1.0], [-1.0]], "b": [2.0, -1.0]}}],
        [ ... second pipe ... ]
      ],
      "norm": "linf",
      "window": null,
      "k": 64,
      "bits": 20
    }

Times must strictly increase per pipe and every sample polytope of both
pipes must share one dimension. ``norm`` names the value-space norm;
the pipeline lifts it to the time-explicit space (``linf`` stays the
max norm, ``l1max`` splits at the value dimension).
"""

import json
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .distance import DEFAULT_BITS, DEFAULT_K, DistanceBounds, compute_bounds
from .errors import (
    EmptyPolytopeError,
    ParseError,
    PipedistError,
    UnboundedPolytopeError,
    ValidationError,
)
from .freespace import PhiKind, build_boundary
from .geometry import Polytope, SampledPipe, lift_time_explicit, validate_polytope
from .norms import NormKind
from .reachability import decide_reachable

NORM_NAMES = ("linf", "l1max")


@dataclass
class PipelineOptions:
    norm: str = "linf"
    window: Optional[int] = None
    k: int = DEFAULT_K
    bits: int = DEFAULT_BITS

    def lifted_norm(self, value_dim: int) -> NormKind:
        """Norm on the time-explicit space for a given value dimension."""
        if self.norm == "linf":
            return NormKind.linf()
        return NormKind.l1max(value_dim)


def _require(cond, message, pipe=None, sample=None):
    if not cond:
        raise ParseError(message, pipe=pipe, sample=sample)


def _parse_sample(entry, pipe_no, sample_no):
    where = f"pipe {pipe_no} sample {sample_no}"
    _require(isinstance(entry, dict), f"{where}: sample must be an object",
             pipe_no, sample_no)
    _require("time" in entry and "halfspaces" in entry,
             f"{where}: needs 'time' and 'halfspaces'", pipe_no, sample_no)
    time = entry["time"]
    _require(isinstance(time, (int, float)) and not isinstance(time, bool),
             f"{where}: time must be a number", pipe_no, sample_no)
    hs = entry["halfspaces"]
    _require(isinstance(hs, dict) and "a" in hs and "b" in hs,
             f"{where}: halfspaces need 'a' and 'b'", pipe_no, sample_no)
    try:
        a = np.array(hs["a"], dtype=float)
        b = np.array(hs["b"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: non-numeric halfspace data",
                         pipe_no, sample_no) from exc
    _require(a.ndim == 2, f"{where}: 'a' must be a matrix", pipe_no, sample_no)
    _require(b.ndim == 1 and b.size == a.shape[0],
             f"{where}: 'b' length {b.size} != row count {a.shape[0]}",
             pipe_no, sample_no)
    try:
        polytope = Polytope(a, b)
    except PipedistError as exc:
        raise ParseError(f"{where}: {exc}", pipe_no, sample_no) from exc
    return float(time), polytope


def _parse_options(doc) -> PipelineOptions:
    options = PipelineOptions()
    norm = doc.get("norm", "linf")
    _require(norm in NORM_NAMES, f"norm must be one of {NORM_NAMES}")
    options.norm = norm
    window = doc.get("window")
    if window is not None:
        _require(isinstance(window, int) and window >= 1,
                 "window must be a positive integer or null")
        options.window = window
    for name, default in (("k", DEFAULT_K), ("bits", DEFAULT_BITS)):
        value = doc.get(name, default)
        _require(isinstance(value, int) and value >= 1,
                 f"{name} must be a positive integer")
        setattr(options, name, value)
    return options


def load_instance(path) -> Tuple[SampledPipe, SampledPipe, PipelineOptions]:
    """Parse and validate an instance file.

    Structural problems raise ParseError; semantically invalid content
    (empty or unbounded sample polytopes, non-increasing times,
    dimension mismatches) raises ValidationError naming the offending
    pipe and sample.
    """
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc}") from exc
    _require(isinstance(doc, dict), "instance must be a JSON object")
    pipes = doc.get("pipes")
    _require(isinstance(pipes, list) and len(pipes) == 2,
             "'pipes' must be a list of exactly two pipes")
    options = _parse_options(doc)

    parsed = []
    for pipe_no, samples in enumerate(pipes):
        _require(isinstance(samples, list) and samples,
                 f"pipe {pipe_no} must be a nonempty list", pipe_no)
        times = []
        polytopes = []
        for sample_no, entry in enumerate(samples):
            t, p = _parse_sample(entry, pipe_no, sample_no)
            times.append(t)
            polytopes.append(p)
        for sample_no in range(1, len(times)):
            if times[sample_no] <= times[sample_no - 1]:
                raise ValidationError(
                    f"pipe {pipe_no}: times not strictly increasing at "
                    f"sample {sample_no}", pipe_no, sample_no)
        dim = polytopes[0].dim
        for sample_no, p in enumerate(polytopes):
            if p.dim != dim:
                raise ValidationError(
                    f"pipe {pipe_no} sample {sample_no}: dimension {p.dim} "
                    f"!= {dim}", pipe_no, sample_no)
            try:
                validate_polytope(p)
            except EmptyPolytopeError as exc:
                raise ValidationError(
                    f"pipe {pipe_no} sample {sample_no}: empty polytope",
                    pipe_no, sample_no) from exc
            except UnboundedPolytopeError as exc:
                raise ValidationError(
                    f"pipe {pipe_no} sample {sample_no}: unbounded polytope",
                    pipe_no, sample_no) from exc
        parsed.append(SampledPipe(np.array(times), tuple(polytopes)))

    if parsed[0].dim != parsed[1].dim:
        raise ValidationError(
            f"pipes differ in dimension: {parsed[0].dim} vs {parsed[1].dim}")
    return parsed[0], parsed[1], options


def instance_to_dict(sp1: SampledPipe, sp2: SampledPipe,
                     options: PipelineOptions) -> dict:
    def pipe_doc(sp):
        return [
            {"time": float(t),
             "halfspaces": {"a": p.a.tolist(), "b": p.b.tolist()}}
            for t, p in zip(sp.times, sp.polytopes)
        ]

    return {
        "pipes": [pipe_doc(sp1), pipe_doc(sp2)],
        "norm": options.norm,
        "window": options.window,
        "k": options.k,
        "bits": options.bits,
    }


def save_instance(path, sp1: SampledPipe, sp2: SampledPipe,
                  options: PipelineOptions) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_dict(sp1, sp2, options), fh, indent=1)
        fh.write("\n")


def run_pipeline(sp1: SampledPipe, sp2: SampledPipe,
                 options: PipelineOptions) -> DistanceBounds:
    """Lift both pipes time-explicitly and compute distance bounds."""
    r1 = lift_time_explicit(sp1)
    r2 = lift_time_explicit(sp2)
    nk = options.lifted_norm(sp1.dim)
    return compute_bounds(
        r1, r2, nk, k=options.k, bits=options.bits, window=options.window,
        validate=False,  # samples were validated at load time
    )


def export_freespace(sp1: SampledPipe, sp2: SampledPipe, delta: float,
                     phi: PhiKind, options: PipelineOptions, out_path) -> None:
    """Write the free-space boundary as line-delimited JSON.

    One record per cell edge in row-major cell order, bottom edge before
    left edge, followed by one record per corner. Bottom edges exist for
    every i in 0..m1 (the i = m1 row is the top boundary), left edges
    for every j in 0..m2.
    """
    r1 = lift_time_explicit(sp1)
    r2 = lift_time_explicit(sp2)
    nk = options.lifted_norm(sp1.dim)
    fsb = build_boundary(r1, r2, delta, phi, nk, k=options.k,
                         window=options.window)
    m1, m2 = fsb.m1, fsb.m2
    with open(out_path, "w") as fh:
        def emit(record):
            fh.write(json.dumps(record) + "\n")

        for i in range(m1 + 1):
            for j in range(m2 + 1):
                if j < m2:
                    emit(_edge_record(i, j, "bottom", fsb.horizontal[i][j]))
                if i < m1:
                    emit(_edge_record(i, j, "left", fsb.vertical[i][j]))
        for i in range(m1 + 1):
            for j in range(m2 + 1):
                emit({"type": "corner", "corner": [i, j],
                      "free": bool(fsb.corners[i, j])})


def _edge_record(i, j, side, interval):
    record = {"type": "edge", "cell": [i, j], "edge": side}
    if interval is None:
        record["empty"] = True
    else:
        record["lo"] = interval.lo
        record["hi"] = interval.hi
    return record


def read_freespace(path):
    """Parse an export back into (edges, corners) dictionaries."""
    edges = {}
    corners = {}
    with open(path) as fh:
        for line in fh:
            record = json.loads(line)
            if record["type"] == "edge":
                key = (record["edge"], record["cell"][0], record["cell"][1])
                if record.get("empty"):
                    edges[key] = None
                else:
                    edges[key] = (record["lo"], record["hi"])
            else:
                corners[tuple(record["corner"])] = record["free"]
    return edges, corners
