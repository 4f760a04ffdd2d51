"""Weighted eigenvalue sums over a capped simplex.

A weight class [omega, total] is the polytope of weight vectors with
0 <= w_i <= omega and sum w = total.  The minimum of sum w_i lam_i over
the polytope has a closed greedy form, and the fractional partial sum
k_sum is its omega = 1 special case.  This script walks the machinery
on a small concrete spectrum.

Run:  python3 demos/02_weighted_bounds.py
"""

import numpy as np

from curvop import (
    WeightClass,
    bound_for_m,
    class_add,
    class_scale,
    greedy_min,
    greedy_weights,
    k_sum,
    k_verdict,
    sample_weights,
)

lam = np.array([-1.0, 0.0, 2.0, 3.0])
print("spectrum:", lam)

# Fractional partial sums interpolate between prefix sums.
for k in (1.0, 1.5, 2.0, 2.5, 4.0):
    print(f"  k_sum(k={k:>3}) = {k_sum(lam, k):+.3f}")

# The spectrum is 2-nonnegative on the boundary and 2.5-positive fails:
print("verdict at k=2  :", k_verdict(lam, 2.0).to_json())
print("verdict at k=2.5:", k_verdict(lam, 2.5).to_json())

# A width-1 class with total weight 2: the greedy minimum stacks the
# full cap on the two smallest eigenvalues.
cls = WeightClass(omega=1.0, total=2.0)
print("\nclass [omega=1, total=2]")
print("  greedy_min      :", greedy_min(lam, cls))
print("  attaining vector:", greedy_weights(lam, cls))

# Relaxations by integer count m: each is a valid lower bound and the
# best one is at m = floor(total/omega).
cls = WeightClass(omega=1.0, total=2.5)
print("\nper-count bounds for [omega=1, total=2.5]")
for m in (1, 2, 3):
    print(f"  m={m}: {bound_for_m(lam, cls, m):+.3f}")
print("  greedy_min:", greedy_min(lam, cls))

# Random admissible weight vectors never undercut the greedy bound.
W = sample_weights(0, cls, N=lam.size, count=10000)
print("  sampled min :", float((W @ lam).min()))

# Classes combine by scaling and termwise addition.  The combination
# below reproduces, for n = 5, how a two-term eigenvalue bound collapses
# into a single class.
n = 5
N = (n - 1) * (n + 2) // 2
a = class_scale((n - 1) / (n + 1), WeightClass(1.0, float(n)))
b = class_scale(2.0 / ((n + 1) * (n + 2)), WeightClass(1.0, float(N)))
combined = class_add(a, b)
print(f"\nn=5 class arithmetic: [{combined.omega:.6g}, {combined.total:.6g}]")
print(f"expected            : [{n / (n + 2):.6g}, {n - 1}]")
