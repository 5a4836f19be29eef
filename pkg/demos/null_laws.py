"""Check the two asymptotic null laws by simulation.

1. The centered maximum of N squared iid standard normals follows the
   type I extreme value law F(x) = exp(-exp(-x/2)/sqrt(pi)).
2. The Fisher combination of two independent uniform p-values follows
   chi-square with 4 degrees of freedom.

Both comparisons print empirical vs theoretical tail probabilities on a
small grid plus the Kolmogorov-Smirnov distance.
"""

import math

import numpy as np

from alphatest.alpha_tests import chisq4_sf, fisher_combine, gumbel_cdf

rng = np.random.default_rng(3)
n, draws = 200, 5000


def ks_distance(sorted_values, cdf):
    probs = np.array([cdf(x) for x in sorted_values])
    grid = np.arange(1, sorted_values.size + 1) / sorted_values.size
    return max(
        np.abs(probs - grid).max(),
        np.abs(probs - (grid - 1.0 / sorted_values.size)).max(),
    )


# --- extreme value law of the centered max ---
z = rng.standard_normal((draws, n))
m = (z**2).max(axis=1)
centered = np.sort(m - (2.0 * math.log(n) - math.log(math.log(n))))

print(f"centered max of {n} squared normals, {draws} draws")
print(f"{'x':>6}  {'empirical P(>x)':>16}  {'limit P(>x)':>12}")
for x in (0.0, 2.0, 4.0, 6.0):
    emp = float(np.mean(centered > x))
    print(f"{x:>6.1f}  {emp:>16.4f}  {1.0 - gumbel_cdf(x):>12.4f}")
print(f"KS distance: {ks_distance(centered, gumbel_cdf):.4f}")
print()

# --- chi-square(4) law of the Fisher combination ---
p_pairs = rng.random((draws, 2))
fc = np.sort([fisher_combine(a, b) for a, b in p_pairs])

print(f"Fisher combination of independent uniform p-values, {draws} draws")
print(f"{'x':>6}  {'empirical P(>x)':>16}  {'chi2(4) P(>x)':>14}")
for x in (2.0, 5.0, 9.48773, 13.2767):
    emp = float(np.mean(fc > x))
    print(f"{x:>6.2f}  {emp:>16.4f}  {chisq4_sf(x):>14.4f}")
print(f"KS distance: {ks_distance(fc, lambda x: 1.0 - chisq4_sf(x)):.4f}")
