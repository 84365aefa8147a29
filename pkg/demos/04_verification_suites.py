"""Running theorem suites over generated instances, and replaying a failure.

Run: python demos/04_verification_suites.py
"""

from __future__ import annotations

import json

from sqbgg.exactla import GF2, QQ
from sqbgg.harness import SUITES, SuiteConfig, gen_instances, run_suite

# every suite over all complexes with n <= 2
for suite in SUITES:
    rep = run_suite(SuiteConfig(suite, n_max=2))
    print(f"{suite:18s} checked {rep.checked:3d}  failures {len(rep.failures)}")

# random cone complexes over GF(2)
cfg = SuiteConfig("bcp", n_min=3, n_max=4, samples=20, seed=1, field=GF2, generator="cone")
rep = run_suite(cfg)
print("\nbcp on cones:", json.dumps(rep.to_dict(timing=False)))

# one generated instance, as it would appear inside a failure record
inst = next(iter(gen_instances(SuiteConfig("main2", 3, 3, 1, 0, QQ, "cone"))))
print("\nan instance record:", json.dumps(inst.to_dict())[:200], "...")
