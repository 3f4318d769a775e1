"""End-to-end command-line workflow.
=================================

Builds an instance file (two 1d box pipes with different drift), then
drives every CLI subcommand against it the way an external toolchain
would: distance bounds, a threshold decision, a free-space export, one
polytope-pair probe, and the oracle cross-check.
"""

import json
import pathlib
import subprocess
import sys

here = pathlib.Path(__file__).parent
instance = here / "data" / "drifting_boxes.json"
instance.parent.mkdir(exist_ok=True)


def pipe(centers, width):
    return [
        {
            "time": float(t),
            "halfspaces": {
                "a": [[1.0], [-1.0]],
                "b": [c + width / 2, -(c - width / 2)],
            },
        }
        for t, c in enumerate(centers)
    ]


doc = {
    "pipes": [
        pipe([0.0, 0.15, 0.4, 0.5], 0.2),
        pipe([0.9, 1.2, 1.3, 1.55], 0.2),
    ],
    "norm": "linf",
    "window": None,
    "k": 64,
    "bits": 16,
}
instance.write_text(json.dumps(doc, indent=1))
print(f"instance written to {instance}\n")


def cli(*args):
    cmd = [sys.executable, "-m", "pipedist.cli", *args]
    print("$ pipedist " + " ".join(args))
    proc = subprocess.run(cmd, capture_output=True, text=True)
    print(proc.stdout.rstrip() or proc.stderr.rstrip())
    print(f"(exit {proc.returncode})\n")
    return proc


cli("distance", str(instance))
cli("decide", str(instance), "--phi", "max", "--delta", "1.5")
cli("decide", str(instance), "--phi", "min", "--delta", "0.5")
out = here / "data" / "drifting_boxes_freespace.ldjson"
cli("freespace", str(instance), "--phi", "min", "--delta", "1.0",
    "--out", str(out))
cli("phi", str(instance), "--op", "max", "--i", "0", "--j", "3")
cli("validate", str(instance), "--json")
