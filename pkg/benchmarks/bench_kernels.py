"""Compare the numba kernels with the pure-Python fallback.

Each backend runs in its own interpreter because the choice is made at import
time from ``E8ORBITS_NUMBA``.  Usage::

    python3 benchmarks/bench_kernels.py [--reductions N] [--scan-depth D]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
import numpy as np
from e8orbits import _accel
from e8orbits.alcove import reduce_to_alcove
from e8orbits.orbitscan import ScanConfig, scan_rho_orbit
from e8orbits.rootdata import e8

n_red, depth = int(sys.argv[1]), int(sys.argv[2])
d = e8()
rng = np.random.default_rng(0)
xs = rng.integers(-10**6, 10**6, size=(n_red, 8))
# warm-up triggers compilation (or the cache load) outside the timed region
reduce_to_alcove(d, xs[0], 101)
scan_rho_orbit(d, ScanConfig(workers=1, max_depth=2))

t0 = time.perf_counter()
steps = sum(reduce_to_alcove(d, x, 101).steps for x in xs)
t_red = time.perf_counter() - t0

t0 = time.perf_counter()
nodes = scan_rho_orbit(d, ScanConfig(workers=1, max_depth=depth)).node_count
t_scan = time.perf_counter() - t0
print(json.dumps({"backend": _accel.backend_name(), "reductions": n_red, "steps": steps,
                  "reduce_s": t_red, "scan_nodes": nodes, "scan_s": t_scan}))
"""


def run(flag, n_red, depth):
    env = dict(os.environ, E8ORBITS_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", WORKLOAD, str(n_red), str(depth)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reductions", type=int, default=500)
    ap.add_argument("--scan-depth", type=int, default=12)
    args = ap.parse_args(argv)
    fast = run("1", args.reductions, args.scan_depth)
    slow = run("0", args.reductions, args.scan_depth)
    assert fast["steps"] == slow["steps"] and fast["scan_nodes"] == slow["scan_nodes"]
    print(f"{'workload':<36}{'numba':>12}{'pure':>12}{'speed-up':>10}")
    for key, label in (("reduce_s", f"{args.reductions} reductions mod 101"),
                       ("scan_s", f"scan to depth {args.scan_depth} ({fast['scan_nodes']} nodes)")):
        print(f"{label:<36}{fast[key]:>11.3f}s{slow[key]:>11.3f}s{slow[key] / fast[key]:>9.1f}x")


if __name__ == "__main__":
    main()
