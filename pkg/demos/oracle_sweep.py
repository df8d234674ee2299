"""Cross-check every method on the small grid and list where the published
closed forms disagree with enumeration.

    python3 demos/oracle_sweep.py [rmax]
"""

import sys
from collections import Counter

from artin_schreier.curves import sweep, sweep_grid

rmax = int(sys.argv[1]) if len(sys.argv) > 1 else 6
res = sweep(list(sweep_grid(ps=(3, 5), es=(1,), rmax=rmax, cap=10**6)))
print(f'{len(res.reports)} curves, {res.mismatches} disagreements between corrected methods')
print('published values that differ, by method:', dict(Counter(d['method'] for d in res.deviations)))
for d in res.deviations[:8]:
    print(f'  q={d["q"]} r={d["r"]} i={d["i"]} lambda={d["lambda"]}: '
          f'{d["method"]} published {d["expected_from_paper"]}, enumeration {d["oracle_value"]}')
for k, v in sorted(res.timings.items()):
    print(f'  {k:16s} {v:.2f} s')
