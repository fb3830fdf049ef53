#!/usr/bin/env python3
"""Near-linear scaling of the purge-based decider.

The decider does one union-find closure per observer domain; unions are
bounded by the state count, so the whole thing is effectively linear in
|states| for fixed action and domain counts.  We time it on random machines
with constant observations (constant so that the closure always runs to
completion instead of stopping at an early violation).
"""

from nicheck.cli import linear_fit_max_ratio, run_scaling_bench

SIZES = (1_000, 10_000, 100_000)

results = run_scaling_bench("p", sizes=SIZES, seed=7)
for r in results:
    per_state = 1e6 * r["seconds"] / r["states"]
    print(f"|S| = {r['states']:>7,}   {r['seconds']:8.4f} s   "
          f"{per_state:6.2f} us/state   secure={r['secure']}")

print()
print(f"worst deviation from a linear fit: {linear_fit_max_ratio(results):.2f}x")
