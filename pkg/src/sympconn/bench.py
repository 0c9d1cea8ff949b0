"""Benchmark the compiled kernel against the pure-Python fallback.

Usage: python -m sympconn.bench [--seeds N] [--cap K]

The backend is fixed at import time, so the driver re-runs itself in two
subprocesses (one with SYMPCONN_PURE=1) and compares wall times on the same
workload: full curvature bundles of seeded random curves plus one
normalization round trip.  Results are also cross-checked for equality.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def workload(seeds, cap):
    from .curvature import curvature_bundle
    from .generate import conjugated_flat_fixture, random_connection_curve
    from .normalization import normalize_curve
    from .serialize import dumps

    digests = []
    for seed in range(seeds):
        bundle = curvature_bundle(random_connection_curve(seed, dim=4, cap=cap))
        digests.append([t.is_zero() for t in bundle.W.orders])
    _, _, moved = conjugated_flat_fixture(0, dim=4, cap=3)
    result = normalize_curve(moved)
    digests.append(dumps(result.flat_curve))
    digests.append(dumps(result.witness))
    return digests


def run_single(args):
    from ._kernel import BACKEND

    start = time.perf_counter()
    digests = workload(args.seeds, args.cap)
    elapsed = time.perf_counter() - start
    json.dump({"backend": BACKEND, "seconds": elapsed, "digest": digests}, sys.stdout)
    sys.stdout.write("\n")


def run_compare(args):
    results = {}
    for label, force_pure in (("compiled", False), ("pure", True)):
        env = dict(os.environ)
        env.pop("SYMPCONN_PURE", None)
        if force_pure:
            env["SYMPCONN_PURE"] = "1"
        out = subprocess.run(
            [sys.executable, "-m", "sympconn.bench", "--single",
             "--seeds", str(args.seeds), "--cap", str(args.cap)],
            env=env, capture_output=True, text=True, check=True,
        )
        results[label] = json.loads(out.stdout)
    if results["compiled"]["digest"] != results["pure"]["digest"]:
        print("MISMATCH: the two backends disagree on the workload", file=sys.stderr)
        return 3
    for label in ("compiled", "pure"):
        r = results[label]
        print(f"{label:>9} backend={r['backend']:<7} {r['seconds']:.3f}s")
    if results["compiled"]["backend"] == "pure":
        print("note: compiled extension unavailable; both runs used the pure kernel")
    else:
        speedup = results["pure"]["seconds"] / results["compiled"]["seconds"]
        print(f"speedup: {speedup:.2f}x (identical exact results)")
    return 0


def main(argv=None):
    p = argparse.ArgumentParser(prog="python -m sympconn.bench")
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--cap", type=int, default=2)
    p.add_argument("--single", action="store_true",
                   help="run the workload once with the current backend (internal)")
    args = p.parse_args(argv)
    if args.single:
        run_single(args)
        return 0
    return run_compare(args)


if __name__ == "__main__":
    sys.exit(main())
