"""Run every exact identity at the default parameter point and print a table."""

import time

from koornasep import suite
from koornasep.params import DEFAULT

start = time.time()
report = suite.verify_all(DEFAULT, seed=1)
width = max(map(len, report))
for name, residual in sorted(report.items()):
    print(f"{name:<{width}}  {residual}")
bad = [k for k, v in report.items() if v != 0]
print(f"\n{len(report)} checks, {len(bad)} nonzero, {time.time() - start:.1f}s")
