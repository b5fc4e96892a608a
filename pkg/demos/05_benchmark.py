"""Timing the five core operations.

By default this times the toy profile (instant).  Pass --production to
generate a full 3072-bit modulus and reproduce the shape of the published
comparison row; expect the KeyGen rows to take a few seconds each.

Run:  python demos/05_benchmark.py [--production]
"""

import sys

from fragfhe import seeded_rng, setup
from fragfhe.bench import bench_run, format_table, to_kv

rng = seeded_rng(555)

if "--production" in sys.argv:
    print("generating 3072-bit parameters...", file=sys.stderr)
    params = setup(128, "production", rng)
else:
    params = setup(16, "toy", rng, p=10007, q=10009)

rows = bench_run(params, iterations=30, rng=rng)
print(format_table(rows, params))

# The same numbers in machine-readable form, for scripts and dashboards.
print()
print(to_kv(rows))
