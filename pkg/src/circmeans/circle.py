"""Evaluators for circular power means of f(zeta) = |1 + y*zeta|.

The central quantity is

    mean(y, alpha) = (1/pi) * int_0^pi (1 + 2 y cos(th) + y^2)^(alpha/2) dth,

the alpha-power mean of |1 + y*zeta| over the unit circle with normalized
arc measure (the theta <-> -theta symmetry halves the domain).  Two
independent routes are provided:

* :func:`mean_quadrature` -- adaptive Gauss-Kronrod on theta.  The
  integrand is evaluated in the cancellation-free form
  (1-y)^2 + 4 y sin^2((pi-th)/2), which stays accurate near th = pi
  where the integrand of small exponents is steep for y ~ 1.

* :func:`mean_series` -- the everywhere-nonnegative power series
  sum_k C(alpha/2, k)^2 y^(2k) on y <= 1 (squared generalized binomial
  coefficients), with the exact inversion mean(y) = y^alpha * mean(1/y)
  for y > 1.  Partial sums are monotone, so the truncation error carries
  a rigorous tail bound.

:func:`log_mean` evaluates the logarithmic mean int ln|1+y*zeta| dm,
whose closed form max{0, ln y} follows from the classical Jensen
formula; the quadrature value is used to verify that identity
numerically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    BACKEND_QUADRATURE,
    BACKEND_SERIES,
    DEFAULT_QUAD_TOL,
    DEFAULT_SERIES_TOL,
    MeanResult,
    check_alpha,
    check_radius,
    check_tol,
)
from .quadrature import integrate_adaptive

_BLOCK = 64


@dataclass(frozen=True)
class SeriesTruncation:
    """How the series backend stopped: terms consumed and a rigorous
    bound on the omitted (all-nonnegative) tail."""

    terms_used: int
    tail_bound: float


def circle_modulus_sq(theta: np.ndarray, y: float) -> np.ndarray:
    """|1 + y e^{i theta}|^2 evaluated without cancellation.

    Uses (1-y)^2 + 4 y sin^2((pi-theta)/2), exact at both endpoints and
    accurate to a few ulps uniformly in theta for y near 1.
    """
    u = math.pi - np.asarray(theta, dtype=float)
    s = np.sin(0.5 * u)
    return (1.0 - y) ** 2 + 4.0 * y * s * s


def binomial_series_mean(
    t: np.ndarray,
    beta: float,
    tol: float,
    *,
    max_terms: int = 500_000,
) -> tuple[np.ndarray, float, int]:
    """sum_k C(beta/2, k)^2 t^(2k) for 0 <= t <= 1, vectorized over t.

    Valid for beta > -2 (term ratios eventually fall below t^2) and, at
    t = 1 exactly, for beta > -0.9 (harmonic-decay tail bound).  Returns
    (values, worst tail bound over the array, terms used).  The tail
    bound is never underestimated; when ``max_terms`` is hit before the
    bound clears ``tol``, the honest bound is returned rather than
    raising.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any((t < 0.0) | (t > 1.0)):
        raise ValueError("series domain is 0 <= t <= 1")
    if beta <= -2.0:
        raise ValueError(f"series requires exponent beta > -2, got {beta}")
    if np.any(t == 1.0) and beta <= -0.9:
        raise ValueError("series at t = 1 requires beta > -0.9")
    b = 0.5 * beta
    t2 = t * t
    values = np.ones_like(t)          # k = 0 term
    coeff = 1.0                        # C(b, k) at current k
    p_next = t2.copy()                 # t^(2(k+1)) for the next block start
    k = 0
    # Tail bounds assume term ratios <= t^2 from k_min on.
    k_min = max(3, int(math.ceil(abs(b))) + 2)
    harmonic_ok = beta > -0.9
    tail = math.inf
    while k < max_terms:
        nblk = min(_BLOCK, max_terms - k)
        cs = np.empty(nblk)
        for j in range(nblk):
            kk = k + 1 + j
            coeff = coeff * (b - kk + 1.0) / kk
            cs[j] = coeff
        powers = _powers(p_next, t2, nblk)
        values = values + powers @ (cs**2)
        p_next = powers[:, -1] * t2
        k += nblk
        if coeff == 0.0:
            # b is a non-negative integer: once a coefficient hits zero
            # the recurrence keeps it zero, so the series has terminated.
            tail = 0.0
            break
        if k >= k_min:
            last_term = cs[-1] ** 2 * powers[:, -1]
            geo = np.where(t2 < 1.0, t2 / np.maximum(1.0 - t2, 1e-300), np.inf)
            bound = last_term * geo
            if harmonic_ok:
                bound = np.minimum(bound, last_term * (k + 1.0) / (1.0 + beta))
            tail = float(np.max(bound))
            if tail <= tol:
                break
    return values, tail, k + 1


def _powers(p_start: np.ndarray, t2: np.ndarray, n: int) -> np.ndarray:
    """Matrix P[i, j] = p_start[i] * t2[i]^j for j = 0..n-1."""
    out = np.empty((p_start.size, n))
    out[:, 0] = p_start
    for j in range(1, n):
        out[:, j] = out[:, j - 1] * t2
    return out


def mean_quadrature(y: float, alpha: float, tol: float = DEFAULT_QUAD_TOL) -> MeanResult:
    """Circular mean of |1 + y*zeta|^alpha by adaptive quadrature.

    Accepts any alpha > 0 (wider than the sharp-constant range, so the
    same evaluator can serve exponent probes above 2).  Raises
    :class:`~circmeans.core.NumericalFailure` carrying the best estimate
    if the evaluation budget is exhausted before ``tol`` is met.
    """
    y = check_radius(y)
    alpha = check_alpha(alpha)
    tol = check_tol(tol)
    if y == 0.0:
        return MeanResult(1.0, 0.0, BACKEND_QUADRATURE, 0)
    half = 0.5 * alpha

    def f(theta: np.ndarray) -> np.ndarray:
        return circle_modulus_sq(theta, y) ** half / math.pi

    value, err, n_eval = integrate_adaptive(f, 0.0, math.pi, tol, breakpoints=(0.5 * math.pi,))
    return MeanResult(value, err, BACKEND_QUADRATURE, n_eval)


def mean_series(
    y: float,
    alpha: float,
    tol: float = DEFAULT_SERIES_TOL,
    *,
    max_terms: int = 500_000,
) -> tuple[MeanResult, SeriesTruncation]:
    """Circular mean of |1 + y*zeta|^alpha by the binomial power series.

    For y > 1 the inversion identity mean(y) = y^alpha * mean(1/y) maps
    the evaluation into the unit disk of convergence.  At y = 1 the
    series converges slowly for small alpha; the returned truncation
    carries the honest (possibly large) tail bound instead of failing.
    """
    y = check_radius(y)
    alpha = check_alpha(alpha)
    tol = check_tol(tol)
    if y <= 1.0:
        scale, arg = 1.0, y
    else:
        scale, arg = inversion_symmetry(y, alpha)
    vals, tail, terms = binomial_series_mean(np.array([arg]), alpha, tol / scale, max_terms=max_terms)
    value = scale * float(vals[0])
    tail_bound = scale * tail
    result = MeanResult(value, tail_bound, BACKEND_SERIES, terms)
    return result, SeriesTruncation(terms, tail_bound)


def inversion_symmetry(y: float, alpha: float) -> tuple[float, float]:
    """Scale factor and reflected radius with mean(y) = scale * mean(1/y).

    Follows from |1 + y*zeta| = y * |1 + (1/y)*conj(zeta)| and the
    reflection invariance of the arc measure.  Requires y > 0; y = 1 is
    the identity (1, 1).
    """
    y = check_radius(y)
    alpha = check_alpha(alpha)
    if y == 0.0:
        raise ValueError("inversion requires y > 0")
    return y**alpha, 1.0 / y


def log_mean(y: float, tol: float = 1e-10) -> float:
    """Mean of ln|1 + y*zeta| over the unit circle, by quadrature.

    The integrable logarithmic singularity at zeta = -1 for y = 1 is
    handled by panel refinement toward theta = pi; interior-node panels
    never sample the singular point itself.  The value agrees with
    max{0, ln y} (Jensen), which the test suite asserts.
    """
    y = check_radius(y)
    tol = check_tol(tol)
    if y == 0.0:
        return 0.0

    def f(theta: np.ndarray) -> np.ndarray:
        return 0.5 * np.log(circle_modulus_sq(theta, y)) / math.pi

    value, _, _ = integrate_adaptive(
        f, 0.0, math.pi, tol, breakpoints=(0.5 * math.pi,), raise_on_failure=(y != 1.0)
    )
    return value
