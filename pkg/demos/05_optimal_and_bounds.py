"""The exact optimum: solver, brute force, and combinatorial bounds.

An offline schedule is equivalent to choosing an interleaving of the two
strands and synthesizing it solo, so the optimum is the minimum solo time
over all merges. The solver computes it in O(L^2 q); brute force confirms
it on small instances. For binary strands the solo time is a pure
function of the run count, which links the optimum to a longest-common-
subsequence bound, and random instances show where the optimal slope
actually sits between the bounds.
"""

import numpy as np

from rowsynth import (
    DEFAULT_SEED,
    ExperimentConfig,
    analytic_bounds,
    binary_runs_time,
    complement,
    conjectured_optimal_slope,
    enumerate_interleavings_min,
    estimate_max_lower_bound,
    estimate_optimal_time,
    lcs_length,
    lcs_upper_bound,
    max_bound_correction,
    runs_count,
    t_star,
)

# Solver vs brute force on random small instances.
rng = np.random.default_rng(DEFAULT_SEED)
agree = 0
for _ in range(300):
    q = int(rng.integers(2, 5))
    x = tuple(rng.integers(0, q, size=6).tolist())
    y = tuple(rng.integers(0, q, size=6).tolist())
    assert t_star(x, y, q) == enumerate_interleavings_min(x, y, q)
    agree += 1
print(f"solver == brute force on {agree}/300 random instances (q in 2..4, L = 6)")
print()

# Binary solo time is a runs count in disguise.
z = (0, 1, 0, 1, 0, 1, 0, 0)
print(f"binary strand {z}: {runs_count(z)} runs")
print(f"  solo time = 2n - 1 - runs (+1 if it opens with 1) = {binary_runs_time(z)}")
print()

# The LCS route to an upper bound: matched symbols between x and the
# complement of y interleave into cheap runs.
x = (0, 1, 1, 0)
y = (0, 1, 0, 0)
m = lcs_length(x, complement(y))
print(f"x = {x}, y = {y}: LCS(x, ~y) = {m}")
print(f"  upper bound 4L - 2*LCS = {lcs_upper_bound(x, y)}, "
      f"true optimum = {t_star(x, y, 2)}")
print()

# Where the random-instance optimum lands, against every analytic line.
q, length, trials = 2, 200, 120
est = estimate_optimal_time(ExperimentConfig(q, length, trials, DEFAULT_SEED))
row = analytic_bounds(q, length)
print(f"random binary instances at L = {length} ({trials} trials):")
print(f"  trivial floor          {row.trivial_lower / length:.4f} L")
print(f"  measured optimum       {est.slope:.4f} L "
      f"(conjectured ~{conjectured_optimal_slope(q)} L)")
print(f"  lf1 upper bound        {row.lf1_expected / length:.4f} L")
print(f"  laggard-first          {row.lf_expected / length:.4f} L")
print(f"  LCS-based bound        2.424 L (via the 0.788 Chvatal-Sankoff lower bound)")
print(f"  x-first                {row.x_first_expected / length:.4f} L")
print()

# For q > 2 the max of the two solo times is the sharper floor.
q = 4
est = estimate_max_lower_bound(q, 2000, 300, DEFAULT_SEED)
predicted = (q + 1) / 2 * 2000 + max_bound_correction(q, 2000)
print(f"max-of-solos floor at q = {q}, L = 2000: measured {est.mean:.1f}, "
      f"predicted {predicted:.1f}")
