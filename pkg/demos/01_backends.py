"""Five independent routes to the same circular mean.

The quantity is the alpha-power mean of |1 + y*zeta| over the unit
circle.  Three deterministic backends (adaptive quadrature on the angle,
a binomial power series in y, and an area integral against the disk's
Green kernel) and two Monte Carlo backends (Green-density sampling and
Brownian occupation times) should all land on the same number, each with
its own honest error report.
"""
from circmeans import (
    PathConfig,
    area_integral_mean,
    mc_area_mean,
    mean_quadrature,
    mean_series,
    occupation_time_mc,
    rng_from_seed,
)

POINTS = [(0.5, 1.0), (0.8, 0.25), (2.0, 1.5), (1.0, 1.0)]

for y, alpha in POINTS:
    print(f"\nmean of |1 + {y} zeta|^{alpha} over the unit circle")
    print("-" * 64)

    q = mean_quadrature(y, alpha, 1e-12)
    print(f"  quadrature     {q.value:.15f}   (err <= {q.error_estimate:.1e}, {q.work} evals)")

    s, trunc = mean_series(y, alpha)
    print(f"  series         {s.value:.15f}   (tail <= {trunc.tail_bound:.1e}, {trunc.terms_used} terms)")

    a = area_integral_mean(y, alpha, 1e-9)
    print(f"  area integral  {a.value:.15f}   (err <= {a.error_estimate:.1e}, {a.work} evals)")

    g = mc_area_mean(y, alpha, 200_000, rng_from_seed(42))
    flag = "  [variance warning]" if g.variance_warning else ""
    print(f"  mc green       {g.mean:.15f}   (stderr {g.stderr:.1e}, n={g.n}){flag}")

    o = occupation_time_mc(y, alpha, PathConfig(dt=1e-3, seed=43), 20_000)
    flag = "  [variance warning]" if o.variance_warning else ""
    print(f"  mc occupation  {o.mean:.15f}   (stderr {o.stderr:.1e}, n={o.n}){flag}")

    spread = max(q.value, s.value, a.value) - min(q.value, s.value, a.value)
    print(f"  deterministic spread: {spread:.2e}")

print("\nThe occupation estimate runs high by O(sqrt(dt)): discretized paths")
print("notice their exit one step late.  That bias is documented, not hidden;")
print("statistical gates add the calibrated allowance before comparing.")
