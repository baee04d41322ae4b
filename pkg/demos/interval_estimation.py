"""
Interval estimation
===================

Student t intervals, exact binomial intervals, and how often the crude
3/sqrt(4n) bound on a proportion actually covers.
"""

# %%
import numpy as np

from probinf.statinf import (
    BinomialData,
    binomial_ci,
    default_rule_reliability,
    exact_coverage,
    hypothesis_test,
    proportion_bound,
    t_interval,
)

lo, hi = t_interval([1, 2, 3, 4, 5], 0.95)
print(f"95% t interval for the mean: [{lo:.4f}, {hi:.4f}]")

lo, hi = binomial_ci(BinomialData(10, 5), 0.95)
print(f"95% exact interval, 5 of 10: [{lo:.4f}, {hi:.4f}]")

# %%
# worst-case coverage of the proportion bound over a grid of true values
ps = np.linspace(0.05, 0.95, 19)
for n in (10, 20, 50, 100):
    h = proportion_bound(n).half_width
    worst = min(exact_coverage(n, float(p), h) for p in ps)
    print(f"n={n:3d}  half-width {h:.3f}  worst coverage {worst:.4f}")

# %%
print(hypothesis_test(BinomialData(20, 17), 0.5, 0.05, "upper"))

# a default rule that worked 45 times out of 50; lower gullibility, wider interval
for g in (0.01, 0.1, 0.5):
    lo, hi = default_rule_reliability(45, 50, g)
    print(f"gullibility {g}: reliability in [{lo:.3f}, {hi:.3f}]")
