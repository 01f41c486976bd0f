"""The two-bound chain under the sharp convexity constant.

For alpha in (0, 2] the circular mean dominates a piecewise bound
(mid_bound), which in turn dominates (1 + (alpha/2) y^2)^(alpha/2)
(target_bound).  Squeezing the target against the mean is what makes
alpha/2 the best possible constant.  This script sweeps the chain over a
grid, prints the tightest margins, and writes per-alpha curve data
suitable for plotting.
"""
import numpy as np

from circmeans import classify_regime, mean_quadrature, mid_bound, target_bound

ALPHAS = (0.5, 1.0, 1.5)
YS = np.geomspace(0.02, 5.0, 120)

print(f"{'alpha':>6} {'worst mean-mid':>16} {'at y':>8} {'worst mid-target':>18} {'at y':>8}")
for alpha in ALPHAS:
    margins_mm, margins_mt = [], []
    for y in YS:
        a = mean_quadrature(float(y), alpha, 1e-11).value
        h = mid_bound(float(y), alpha)
        g = target_bound(float(y), alpha)
        margins_mm.append(a - h)
        margins_mt.append(h - g)
    i = int(np.argmin(margins_mm))
    j = int(np.argmin(margins_mt))
    print(f"{alpha:6.2f} {margins_mm[i]:16.3e} {YS[i]:8.3f} {margins_mt[j]:18.3e} {YS[j]:8.3f}")

print("\nBoth margins shrink toward y = 0 like y^4 and y^2 respectively and")
print("collapse identically to zero at alpha = 2, where mean = mid = target")
print("= 1 + y^2: the chain is tight exactly at the endpoint exponent.")

print("\nBranches of the piecewise bound along y (alpha = 1):")
for y in (0.5, 1.0, 1.2, 1.4, 1.5, 2.0):
    print(f"  y = {y:4.2f}: {classify_regime(y, 1.0).value}")

# Figure-style data: one small CSV per alpha.
from circmeans.cli import emit_figure_data

paths = emit_figure_data(ALPHAS, np.linspace(0.0, 3.0, 61), "demo_output")
print("\nCurve data written for external plotting:")
for p in paths:
    print(f"  {p}")
