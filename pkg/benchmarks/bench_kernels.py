#!/usr/bin/env python3
"""Compare the compiled (numba) and pure-numpy kernel backends.

Runs the same boosting workload in two subprocesses, one with
CALBOOST_NO_NUMBA=1, and reports wall-clock times and the speedup.
Results are asserted identical as a side check.

Usage: python benchmarks/bench_kernels.py [--examples N] [--features D]
       [--learners T] [--repeats R]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = """
import json, time
import numpy as np
from calboost import _accel
from calboost.boosting import Ensemble, score_vote_batch
from calboost.rng import RngStream

args = json.loads({args!r})
rng = np.random.default_rng(0)
y = rng.choice([-1.0, 1.0], size=args["examples"])
X = y[:, None] * 1.0 + rng.normal(size=(args["examples"], args["features"]))

# one untimed pass to absorb jit compilation
warm = Ensemble("nb", args["learners"], args["features"])
warm.update_batch(X[:200], y[:200], RngStream(0))

times = []
for _ in range(args["repeats"]):
    ens = Ensemble("nb", args["learners"], args["features"])
    stream = RngStream(1)
    t0 = time.perf_counter()
    ens.update_batch(X, y, stream)
    scores = score_vote_batch(ens, X)
    times.append(time.perf_counter() - t0)

print(json.dumps({{
    "numba": _accel.NUMBA_ENABLED,
    "best_seconds": min(times),
    "checksum": float(scores.sum()),
    "lambda_sc": ens.lambda_sc.tolist(),
}}))
"""


def run_backend(args_json: str, disable_numba: bool) -> dict:
    env = dict(os.environ)
    env.pop("CALBOOST_NO_NUMBA", None)
    if disable_numba:
        env["CALBOOST_NO_NUMBA"] = "1"
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD.format(args=args_json)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--examples", type=int, default=20000)
    parser.add_argument("--features", type=int, default=5)
    parser.add_argument("--learners", type=int, default=10)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args(argv)
    args_json = json.dumps(vars(args))

    fast = run_backend(args_json, disable_numba=False)
    slow = run_backend(args_json, disable_numba=True)

    if fast["checksum"] != slow["checksum"] or fast["lambda_sc"] != slow["lambda_sc"]:
        print("ERROR: backends disagree on results", file=sys.stderr)
        return 1

    label_fast = "numba" if fast["numba"] else "pure-numpy (numba unavailable)"
    print(f"workload: {args.examples} examples x {args.learners} NB learners, "
          f"d={args.features}, best of {args.repeats}")
    print(f"  {label_fast:28s} {fast['best_seconds'] * 1e3:9.1f} ms")
    print(f"  {'pure-numpy':28s} {slow['best_seconds'] * 1e3:9.1f} ms")
    if fast["numba"]:
        print(f"  speedup: {slow['best_seconds'] / fast['best_seconds']:.1f}x")
    print("  results identical across backends: yes")
    return 0


if __name__ == "__main__":
    sys.exit(main())
