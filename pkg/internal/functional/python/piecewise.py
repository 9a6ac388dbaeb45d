"""
Piecewise - level sets and integrals of piecewise-linear functions
Level sets are computed from exact linear crossings and mapped through F
"""

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import integrate

from internal.common.python.exceptions import DomainError, NumericalFailure
from internal.functional.python.functional_models import PiecewiseFunction
from internal.measures.python.measures import Measure
from internal.sets.python.interval_sets import from_real_intervals, measure_of
from internal.sets.python.set_models import QuantileSet

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

BISECT_ITERATIONS = 200
MEDIAN_TOL = 1e-9
GAUSS_NODES = 20


def _real_level_intervals(u: PiecewiseFunction, h: float, closed: bool = False) -> List[Tuple[float, float]]:
    """{u > h} (or {u ≥ h}) as merged real intervals, possibly unbounded"""
    above = (lambda y: y >= h) if closed else (lambda y: y > h)
    pieces = []
    if above(u.values[0]):
        pieces.append((-math.inf, u.breakpoints[0]))
    for x0, x1, y0, y1 in u.segments():
        in0, in1 = above(y0), above(y1)
        if in0 and in1:
            pieces.append((x0, x1))
        elif in0:
            pieces.append((x0, x0 + (x1 - x0) * (y0 - h) / (y0 - y1)))
        elif in1:
            pieces.append((x0 + (x1 - x0) * (h - y0) / (y1 - y0), x1))
    if above(u.values[-1]):
        pieces.append((u.breakpoints[-1], math.inf))

    merged: List[List[float]] = []
    for a, b in pieces:
        if b <= a:
            continue
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return [(a, b) for a, b in merged]


def level_set(u: PiecewiseFunction, m: Measure, h: float, closed: bool = False) -> QuantileSet:
    """E_h^u = {u > h} in quantile coordinates"""
    return from_real_intervals(_real_level_intervals(u, h, closed), m)


def level_perimeter(u: PiecewiseFunction, m: Measure, h: float) -> float:
    """P(E_h^u): density summed over the finite boundary points"""
    boundary = [x for interval in _real_level_intervals(u, h) for x in interval if math.isfinite(x)]
    if not boundary:
        return 0.0
    return float(np.sum(m.density(np.asarray(boundary))))


def distribution_function(u: PiecewiseFunction, m: Measure, h: ArrayLike, closed: bool = False) -> ArrayLike:
    """μ_u(h) = μ(u > h), vectorized over h.

    Segments are disjoint up to endpoints, so the measure is the sum of the
    F-increments of the part of each segment lying above h.
    """
    hs = np.atleast_1d(np.asarray(h, dtype=float))[:, None]
    xs = np.asarray(u.breakpoints)
    ys = np.asarray(u.values)
    cdf = np.asarray(m.cdf(xs), dtype=float)

    def above(y):
        return y >= hs if closed else y > hs

    total = np.where(above(ys[0]), cdf[0], 0.0) + np.where(above(ys[-1]), 1.0 - cdf[-1], 0.0)
    total = total[:, 0]
    if len(xs) > 1:
        x0, x1, y0, y1 = xs[:-1], xs[1:], ys[:-1], ys[1:]
        in0, in1 = above(y0), above(y1)
        with np.errstate(divide="ignore", invalid="ignore"):
            crossing = x0 + (x1 - x0) * (hs - y0) / (y1 - y0)
        lo = np.where(in0, x0, crossing)
        hi = np.where(in1, x1, crossing)
        some = in0 | in1
        lo = np.where(some, lo, x0)
        hi = np.where(some, hi, x0)
        increments = np.where(some, np.asarray(m.cdf(hi)) - np.asarray(m.cdf(lo)), 0.0)
        total = total + np.sum(np.clip(increments, 0.0, None), axis=1)
    total = np.clip(total, 0.0, 1.0)
    if np.ndim(h) == 0:
        return float(total[0])
    return total


def oscillation(u: PiecewiseFunction) -> float:
    return u.sup - u.inf


def median(u: PiecewiseFunction, m: Measure) -> float:
    """Smallest h with μ(u > h) ≤ 1/2, by bisection"""
    lo, hi = u.inf, u.sup
    if distribution_function(u, m, lo) <= 0.5:
        return lo
    for _ in range(BISECT_ITERATIONS):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if distribution_function(u, m, mid) > 0.5:
            lo = mid
        else:
            hi = mid
    return hi


def has_median_zero(u: PiecewiseFunction, m: Measure, tol: float = MEDIAN_TOL) -> bool:
    return distribution_function(u, m, 0.0) <= 0.5 + tol and \
        distribution_function(u.scaled(-1.0), m, 0.0) <= 0.5 + tol


def integral_abs(u: PiecewiseFunction, m: Measure) -> float:
    """∫|u| dμ: quadrature on each sign-definite segment plus the constant tails"""
    v = u.with_zero_crossings()
    total = abs(v.values[0]) * float(m.cdf(v.breakpoints[0])) + abs(v.values[-1]) * (1.0 - float(m.cdf(v.breakpoints[-1])))
    for x0, x1, y0, y1 in v.segments():
        if y0 == 0.0 and y1 == 0.0:
            continue
        slope = (y1 - y0) / (x1 - x0)
        value, _ = integrate.quad(lambda x: abs(y0 + slope * (x - x0)) * m.density(x), x0, x1,
                                  epsabs=1e-14, epsrel=1e-12, limit=200)
        total += value
    return float(total)


def integral_abs_derivative(u: PiecewiseFunction, m: Measure) -> float:
    """∫|u′| dμ = Σ |slope| (F(right) - F(left)), exact per segment"""
    total = 0.0
    for x0, x1, y0, y1 in u.segments():
        total += abs(y1 - y0) / (x1 - x0) * (float(m.cdf(x1)) - float(m.cdf(x0)))
    return total


def l1_distance(u: PiecewiseFunction, v: PiecewiseFunction, m: Measure) -> float:
    return integral_abs(u.minus(v), m)


def integrate_levels(fn: Callable[[float], float], knots: Sequence[float], n_nodes: int = GAUSS_NODES) -> float:
    """∫ fn(h) dh over [min(knots), max(knots)], Gauss-Legendre on each piece between knots"""
    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    knots = np.unique(np.asarray(knots, dtype=float))
    total = 0.0
    for a, b in zip(knots[:-1], knots[1:]):
        half, centre = 0.5 * (b - a), 0.5 * (a + b)
        total += half * sum(w * fn(centre + half * z) for z, w in zip(nodes, weights))
    return float(total)


def coarea_integral(u: PiecewiseFunction, m: Measure, n_nodes: int = GAUSS_NODES) -> float:
    """∫ P(E_h^u) dh over all levels; equals ∫|u′| dμ"""
    # u(0) is a kink of h ↦ P(E_h^u) since the density has one at the origin
    knots = list(u.values) + [float(u(0.0))]
    return integrate_levels(lambda h: level_perimeter(u, m, h), knots, n_nodes)


def indicator_approximation(S: QuantileSet, m: Measure, ramp: float = 1e-3) -> PiecewiseFunction:
    """Trapezoids of height 1 over the components of S, with linear ramps of quantile width ramp inside S"""
    points: List[Tuple[float, float]] = []
    for a, b in S.intervals:
        if b - a <= 2.0 * ramp:
            raise DomainError("ramp", ramp, f"less than half of the component ({a:g}, {b:g})")
        if a > 0.0:
            points += [(a, 0.0), (a + ramp, 1.0)]
        if b < 1.0:
            points += [(b - ramp, 1.0), (b, 0.0)]
    if not points:
        raise DomainError("S", S.endpoints, "a set with a finite boundary point")
    quantiles = np.asarray([q for q, _ in points])
    xs = np.asarray(m.quantile(quantiles), dtype=float)
    return PiecewiseFunction(breakpoints=[float(x) for x in xs], values=[y for _, y in points])


def random_piecewise(rng: np.random.Generator, m: Measure, n_breaks: int = 6, nonnegative: bool = False,
                     median_zero: bool = True, origin_gap: Optional[float] = None,
                     max_attempts: int = 200) -> PiecewiseFunction:
    """Random continuous piecewise-linear function with breakpoints drawn in quantiles.

    median_zero shifts by the computed μ-median. With origin_gap the function
    vanishes on the quantile window (1/2 - gap, 1/2 + gap) and median zero is
    reached by resampling instead of shifting.
    """
    for _ in range(max_attempts):
        quantiles = rng.uniform(0.02, 0.98, size=n_breaks)
        values = list(rng.uniform(-1.0, 1.0, size=n_breaks))
        if origin_gap is not None:
            keep = np.abs(quantiles - 0.5) > origin_gap
            quantiles = np.concatenate([quantiles[keep], [0.5 - origin_gap, 0.5 + origin_gap]])
            values = [v for v, k in zip(values, keep) if k] + [0.0, 0.0]
        order = np.argsort(quantiles)
        xs = np.asarray(m.quantile(quantiles[order]), dtype=float)
        if np.any(np.diff(xs) <= 0.0):
            continue
        u = PiecewiseFunction(breakpoints=[float(x) for x in xs], values=[float(values[i]) for i in order])
        if origin_gap is not None:
            if median_zero and not has_median_zero(u, m, tol=0.0):
                continue
        elif median_zero:
            u = u.shifted(-median(u, m))
        return u.positive_part() if nonnegative else u
    raise NumericalFailure("random_piecewise", f"no admissible function after {max_attempts} draws")
