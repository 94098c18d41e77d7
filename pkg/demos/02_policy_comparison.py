"""Monte Carlo comparison of tie policies against their analytic targets.

For random strand pairs the expected completion time grows linearly in L.
The slope depends only on how ties are resolved:

  laggard-first        (q+3)/2          the best any no-lookahead rule can do
  x-first / y-first    (q+1)(q+7)/(2(q+3))   pays for letting one strand run ahead
  round-robin, random  (q+3)/2          symmetric rules also sit at the floor
  lf1 (q=2 only)       7/3              one symbol of lookahead beats the floor

Each estimate below uses per-trial seed substreams, so rerunning the
script reproduces the numbers exactly.
"""

from rowsynth import DEFAULT_SEED, ExperimentConfig, analytic_slope, estimate_policy_time

LENGTH = 2000
TRIALS = 120

for q in (2, 4):
    print(f"q = {q}, L = {LENGTH}, {TRIALS} trials per policy")
    print(f"  {'policy':<12} {'slope':>8} {'target':>8} {'gap/sigma':>10}")
    for name in ("lf", "lf1", "round-robin", "random", "x-first", "y-first"):
        if name == "lf1" and q != 2:
            continue
        est = estimate_policy_time(
            ExperimentConfig(q, LENGTH, TRIALS, DEFAULT_SEED, name))
        target = analytic_slope(name, q)
        sigma = est.stderr / LENGTH
        gap = (est.slope - target) / sigma if sigma else float("nan")
        print(f"  {name:<12} {est.slope:>8.4f} {target:>8.4f} {gap:>10.2f}")
    print()

print("notes:")
print("- the laggard-first slope is also a floor: no rule that ignores")
print("  upcoming symbols can beat (q+3)/2 asymptotically")
print("- gaps are reported in standard errors of the estimate; symmetric")
print("  policies carry an O(sqrt(L)) finishing cost, so their small")
print("  positive gaps shrink with L")
