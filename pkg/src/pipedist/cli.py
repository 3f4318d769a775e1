"""Command-line interface.

Subcommands:

* ``distance``  - compute (beta_min, beta_max) for an instance file
* ``decide``    - one threshold decision (--phi min|max --delta D)
* ``freespace`` - export the free-space boundary as line-delimited JSON
* ``phi``       - best/worst-case distance of two lifted sample polytopes
* ``validate``  - cross-check the bounds against the brute-force oracle

Exit codes: 0 success, 1 failed validate cross-check, 2 invalid input,
3 numerical failure.
"""

import argparse
import json
import sys

from .distance import DistanceBounds, decide_min, decide_var
from .errors import (
    NumericalFailureError,
    ParseError,
    PipedistError,
    UnboundedNormError,
    ValidationError,
)
from .freespace import PhiKind, phi_max, phi_min
from .geometry import lift_time_explicit
from .oracle import pipe_min_max
from .pipeline import export_freespace, load_instance, run_pipeline

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_NUMERICAL = 3


def _add_common(parser):
    parser.add_argument("instance", help="instance JSON file")
    parser.add_argument("--norm", choices=("linf", "l1max"),
                        help="override the instance's norm")
    parser.add_argument("--window", type=int,
                        help="retiming window in segment indices")
    parser.add_argument("--k", type=int,
                        help="per-edge sampling resolution for phi max")
    parser.add_argument("--bits", type=int,
                        help="fractional bits of the binary search")
    parser.add_argument("--json", action="store_true",
                        help="machine-readable output on stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pipedist",
        description="Bounds on the Skorokhod variation distance between "
                    "two polytope-sampled flowpipes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", help="compute beta_min / beta_max")
    _add_common(p)

    p = sub.add_parser("decide", help="decide one distance threshold")
    _add_common(p)
    p.add_argument("--phi", choices=("min", "max"), required=True)
    p.add_argument("--delta", type=float, required=True)

    p = sub.add_parser("freespace", help="export the free-space boundary")
    _add_common(p)
    p.add_argument("--phi", choices=("min", "max"), required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--out", required=True, help="output path (ldjson)")

    p = sub.add_parser("phi", help="distance of two single sample polytopes")
    _add_common(p)
    p.add_argument("--op", choices=("min", "max"), required=True)
    p.add_argument("--i", type=int, default=0,
                   help="sample index into pipe 1 (default 0)")
    p.add_argument("--j", type=int, default=0,
                   help="sample index into pipe 2 (default 0)")

    p = sub.add_parser("validate",
                       help="cross-check bounds against the trace oracle")
    _add_common(p)
    p.add_argument("--grid", type=int, default=3,
                   help="oracle grid points per box edge (default 3)")
    p.add_argument("--refinement", type=int, default=50,
                   help="oracle polyline pieces per segment (default 50)")
    p.add_argument("--tol", type=float, default=0.05,
                   help="allowed sandwich slack (default 0.05)")
    return parser


def _load(args):
    sp1, sp2, options = load_instance(args.instance)
    if args.norm is not None:
        options.norm = args.norm
    if args.window is not None:
        options.window = args.window
    if args.k is not None:
        options.k = args.k
    if args.bits is not None:
        options.bits = args.bits
    return sp1, sp2, options


def _emit(args, payload, text):
    print(json.dumps(payload) if args.json else text)


def _bounds_payload(bounds: DistanceBounds) -> dict:
    return {
        "beta_min": bounds.beta_min,
        "beta_max": bounds.beta_max,
        "window": bounds.window,
        "k": bounds.k,
        "bits": bounds.bits,
        "k_sensitive": bounds.k_sensitive,
    }


def _cmd_distance(args):
    sp1, sp2, options = _load(args)
    bounds = run_pipeline(sp1, sp2, options)
    _emit(args, _bounds_payload(bounds),
          f"beta_min = {bounds.beta_min:.9g}\n"
          f"beta_max = {bounds.beta_max:.9g}"
          + ("  (k-sensitive: no worst-case probe certified; "
             "consider a larger --k)" if bounds.k_sensitive else ""))
    return EXIT_OK


def _cmd_decide(args):
    sp1, sp2, options = _load(args)
    r1, r2 = lift_time_explicit(sp1), lift_time_explicit(sp2)
    nk = options.lifted_norm(sp1.dim)
    if args.phi == "min":
        result = decide_min(r1, r2, args.delta, nk, window=options.window)
    else:
        result = decide_var(r1, r2, args.delta, nk, k=options.k,
                            window=options.window)
    _emit(args, {"phi": args.phi, "delta": args.delta, "result": result},
          f"d_{args.phi} <= {args.delta}: {str(result).lower()}")
    return EXIT_OK


def _cmd_freespace(args):
    sp1, sp2, options = _load(args)
    phi = PhiKind.MIN if args.phi == "min" else PhiKind.MAX
    export_freespace(sp1, sp2, args.delta, phi, options, args.out)
    m1 = sp1.m
    m2 = sp2.m
    records = (m1 * (m2 + 1) + (m1 + 1) * m2) + (m1 + 1) * (m2 + 1)
    _emit(args, {"path": args.out, "records": records},
          f"wrote {records} records to {args.out}")
    return EXIT_OK


def _cmd_phi(args):
    sp1, sp2, options = _load(args)
    if not 0 <= args.i <= sp1.m or not 0 <= args.j <= sp2.m:
        raise ValidationError(
            f"sample index out of range (pipe 1 has {sp1.m + 1} samples, "
            f"pipe 2 has {sp2.m + 1})")
    r1, r2 = lift_time_explicit(sp1), lift_time_explicit(sp2)
    nk = options.lifted_norm(sp1.dim)
    fn = phi_min if args.op == "min" else phi_max
    value = fn(r1.samples[args.i], r2.samples[args.j], nk)
    _emit(args, {"op": args.op, "i": args.i, "j": args.j, "value": value},
          f"phi_{args.op}(pipe1[{args.i}], pipe2[{args.j}]) = {value:.9g}")
    return EXIT_OK


def _cmd_validate(args):
    sp1, sp2, options = _load(args)
    bounds = run_pipeline(sp1, sp2, options)
    r1, r2 = lift_time_explicit(sp1), lift_time_explicit(sp2)
    nk = options.lifted_norm(sp1.dim)
    try:
        omin, omax = pipe_min_max(r1, r2, nk, args.grid, args.refinement)
    except ValueError as exc:
        raise ValidationError(f"oracle needs axis-aligned boxes: {exc}") from exc
    lower_ok = bounds.beta_min <= omin + args.tol
    upper_ok = omax <= bounds.beta_max + args.tol
    ok = lower_ok and upper_ok
    payload = {
        **_bounds_payload(bounds),
        "oracle_min": omin,
        "oracle_max": omax,
        "tol": args.tol,
        "consistent": ok,
    }
    text = (f"beta_min = {bounds.beta_min:.6g}  oracle_min = {omin:.6g}  "
            f"{'ok' if lower_ok else 'VIOLATED'}\n"
            f"beta_max = {bounds.beta_max:.6g}  oracle_max = {omax:.6g}  "
            f"{'ok' if upper_ok else 'VIOLATED'}")
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


_COMMANDS = {
    "distance": _cmd_distance,
    "decide": _cmd_decide,
    "freespace": _cmd_freespace,
    "phi": _cmd_phi,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except (NumericalFailureError, UnboundedNormError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except PipedistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
