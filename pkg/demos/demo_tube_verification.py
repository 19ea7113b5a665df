"""Build an order-n tube plan and watch the setup conditions verify.

Run with:  python3 demos/demo_tube_verification.py
"""

from genusone import build_induction, find_verified_plan, tube_parameters

for n in (1, 3):
    params = tube_parameters(n)
    print(f"order n={n}: m={params.m}, k={params.k}")
    plan, report = find_verified_plan(n)
    print(f"  {len(plan.tubes)} tubes, removed middles:", plan.u_tilde)
    print(f"  verified at depth {report.depth}:")
    print(f"    halves map into halves: {report.cond_halves}")
    print(f"    outer region absorbs the first two levels: {report.cond_outer}")
    drops = all(ok for _, ok in report.cond_drop)
    print(f"    every deeper level drops below itself: {drops}")
    shifts = sorted({ell for _, ell, _ in report.shift_checks})
    print(f"    tube stretches shift levels by: {shifts}\n")

print("Chaining orders 2 then 3 and re-verifying the nesting laws:")
maps, report = build_induction([2, 3], depth=6)
for step in report.steps:
    print(
        f"  step {step.level} (order {step.order}): "
        f"outer-arc pullback strictly grew: {step.v0_strictly_nested}, "
        f"halves nested: {step.halves_nested}"
    )
print("  pullback chain component counts:", [v.n_components for v in report.v0_chain])
