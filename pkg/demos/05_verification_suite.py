"""Run the full verification suite and print a report table.

run_suite checks branch arithmetic globally, then six properties per
scenario (automorphism shifts, duality region series, cut-crossing index
drops, loop monodromy composition, exchange duality, contragredient
duality) over the default corpus: six curated families, fourteen random
ones, and three deliberately broken negative controls.  A healthy build
passes every normal check and fails every control.
"""

import time

from twistlab import default_scenarios, run_suite, suite_ok

scenarios = default_scenarios()
normals = [sc for sc in scenarios if sc.control is None]
controls = [sc for sc in scenarios if sc.control is not None]
print(f"{len(scenarios)} scenarios: {len(normals)} normal, "
      f"{len(controls)} negative controls "
      f"({', '.join(sorted(sc.control for sc in controls))})")
print()

t0 = time.perf_counter()
reports = run_suite()
elapsed = time.perf_counter() - t0

width = max(len(r.name) for r in reports)
print(f"{'check':<{width}}  {'result':<17} {'max defect':>12} {'tol':>8} {'n':>6}")
for r in reports:
    flag = "pass" if r.passed else "FAIL"
    if r.expect_fail:
        flag += " (expected)" if not r.passed else " (unexpected)"
    print(f"{r.name:<{width}}  {flag:<17} {r.max_defect:>12.3e} "
          f"{r.tol:>8.0e} {r.samples:>6}")

print()
ok = suite_ok(reports)
n_pass = sum(r.passed for r in reports)
n_controls = sum(r.expect_fail for r in reports)
print(f"{len(reports)} checks in {elapsed:.1f}s: {n_pass} pass, "
      f"{len(reports) - n_pass} fail ({n_controls} controls expected to fail)")
print(f"suite verdict: {'OK' if ok else 'BROKEN'}")
