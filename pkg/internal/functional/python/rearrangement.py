"""
Rearrangement - decreasing and symmetric rearrangements, weak Lorentz norms
"""

import logging
from typing import Callable, Union

import numpy as np
from scipy import optimize

from internal.common.python.exceptions import DomainError
from internal.extremals.python.extremals import isoperimetric_profile
from internal.functional.python.functional_models import PiecewiseFunction
from internal.functional.python.piecewise import BISECT_ITERATIONS, distribution_function
from internal.measures.python.measures import Measure
from internal.sets.python.interval_sets import reference_set
from internal.sets.python.set_models import QuantileSet, SetShape

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

SUPPORT_TOL = 1e-12
LEVEL_GRID = 256


def _require_nonnegative(u: PiecewiseFunction) -> None:
    if u.inf < 0.0:
        raise DomainError("u", f"inf(u)={u.inf:g}", "non-negative functions")


def _u_star(u: PiecewiseFunction, m: Measure, s: np.ndarray) -> np.ndarray:
    """Vectorized bisection for sup{h ≥ 0 : μ_u(h) > s}, s inside (0, μ(supp u))"""
    lo = np.zeros_like(s)
    hi = np.full_like(s, u.sup)
    for _ in range(BISECT_ITERATIONS):
        mid = 0.5 * (lo + hi)
        if np.all((mid == lo) | (mid == hi)):
            break
        larger = np.asarray(distribution_function(u, m, mid)) > s
        lo = np.where(larger, mid, lo)
        hi = np.where(larger, hi, mid)
    return hi


def decreasing_rearrangement(u: PiecewiseFunction, m: Measure, s: ArrayLike) -> ArrayLike:
    """u*(s) = sup{h ≥ 0 : μ_u(h) > s} for s in (0, μ(supp u))"""
    _require_nonnegative(u)
    support = distribution_function(u, m, 0.0)
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any((s_arr <= 0.0) | (s_arr >= support)):
        raise DomainError("s", s, f"(0, {support:g})")
    result = _u_star(u, m, s_arr)
    return float(result[0]) if np.ndim(s) == 0 else result


def sharp_rearrangement(u: PiecewiseFunction, m: Measure, x: ArrayLike) -> ArrayLike:
    """u^#(x) = u*(2F(-|x|)), zero once 2F(-|x|) reaches μ(supp u)"""
    _require_nonnegative(u)
    support = distribution_function(u, m, 0.0)
    if support > 0.5 + SUPPORT_TOL:
        raise DomainError("u", f"μ(supp u)={support:g}", "support measure at most 1/2")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    s = 2.0 * np.asarray(m.cdf(-np.abs(x_arr)), dtype=float)
    result = np.zeros_like(s)
    inside = (s > 0.0) & (s < support)
    if np.any(inside):
        result[inside] = _u_star(u, m, s[inside])
    result[s <= 0.0] = u.sup
    return float(result[0]) if np.ndim(x) == 0 else result


def sharp_level_set(u: PiecewiseFunction, m: Measure, h: float) -> QuantileSet:
    """E_h^{u^#} = (E_h^u)^#, the complement of a symmetric interval"""
    if h < 0.0:
        raise DomainError("h", h, "[0, inf)")
    return reference_set(distribution_function(u, m, h), SetShape.complement)


def rearranged_distribution(u: PiecewiseFunction, m: Measure, h: ArrayLike) -> ArrayLike:
    """μ(u^# > h) from u* alone: the length of {s : u*(s) > h}"""
    _require_nonnegative(u)
    support = distribution_function(u, m, 0.0)
    hs = np.atleast_1d(np.asarray(h, dtype=float))
    lo = np.zeros_like(hs)
    hi = np.full_like(hs, support)
    for _ in range(BISECT_ITERATIONS):
        mid = 0.5 * (lo + hi)
        if np.all((mid == lo) | (mid == hi)):
            break
        taller = _u_star(u, m, mid) > hs
        lo = np.where(taller, mid, lo)
        hi = np.where(taller, hi, mid)
    result = np.where(hs >= u.sup, 0.0, lo)
    return float(result[0]) if np.ndim(h) == 0 else result


def _level_sup(u: PiecewiseFunction, m: Measure, weight: Callable[[np.ndarray], np.ndarray]) -> float:
    """sup_{h>0} h·weight(μ(|u| > h)).

    Candidates are the breakpoint levels (with μ(|u| ≥ h), the left limit),
    a geometric grid, and a bounded refinement around the best grid level.
    """
    v = u.absolute()
    top = v.sup
    if top <= 0.0:
        return 0.0
    levels = np.array(sorted({y for y in v.values if y > 0.0}))
    best = float(np.max(levels * weight(np.asarray(distribution_function(v, m, levels, closed=True)))))

    grid = np.geomspace(top * 1e-6, top, LEVEL_GRID)
    scores = grid * weight(np.asarray(distribution_function(v, m, grid)))
    k = int(np.argmax(scores))
    best = max(best, float(scores[k]))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    if hi > lo:
        result = optimize.minimize_scalar(
            lambda h: -h * float(weight(np.asarray(distribution_function(v, m, h)))),
            bounds=(lo, hi), method="bounded", options={"xatol": 1e-12 * top},
        )
        best = max(best, float(-result.fun))
    return best


def weak_lorentz_norm(u: PiecewiseFunction, m: Measure, p: float) -> float:
    """‖u‖_{L^{p,∞}(μ)} = sup_{t>0} t·μ(|u| > t)^{1/p}"""
    if not p > 0.0:
        raise DomainError("p", p, "(0, inf)")
    return _level_sup(u, m, lambda mass: mass ** (1.0 / p))


def embedding_lhs(u: PiecewiseFunction, m: Measure) -> float:
    """sup_{h ≥ 0} h·I(μ(u > h)) = sup_{0<t<1/2} u*(t)·I(t), for u ≥ 0"""
    _require_nonnegative(u)
    return _level_sup(u, m, lambda mass: np.asarray(isoperimetric_profile(m, mass), dtype=float))
