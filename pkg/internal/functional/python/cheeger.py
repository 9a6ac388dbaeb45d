"""
Cheeger - weak Cheeger inequalities and their quantitative form
β(s) = sup_{s≤t≤1/2} (t-s)/Ĩ(t) with Ĩ the isoperimetric profile, and the checks built on it
"""

import logging
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from internal.common.python.exceptions import DomainError
from internal.common.python.logging_setup import progress
from internal.deficit.python.deficit import constant_c_prime, origin_free_gate
from internal.extremals.python.extremals import isoperimetric_profile
from internal.functional.python.functional_models import (
    CheegerRate,
    InequalityReport,
    InequalityRow,
    LemmaReport,
    PiecewiseFunction,
)
from internal.functional.python.piecewise import (
    has_median_zero,
    integral_abs,
    integral_abs_derivative,
    integrate_levels,
    l1_distance,
    level_set,
    oscillation,
)
from internal.functional.python.rearrangement import embedding_lhs
from internal.measures.python.measures import Measure
from internal.sets.python.interval_sets import rearrangement_asymmetry, symmetric_difference_measure

logger = logging.getLogger(__name__)

T_GRID = 512
S_GRID = 128
XATOL = 1e-13


def _refine_max(objective: Callable[[float], float], nodes: np.ndarray, scores: np.ndarray) -> float:
    """Best grid score, refined by bounded Brent between the neighbours of the argmax"""
    k = int(np.argmax(scores))
    best = float(scores[k])
    lo, hi = nodes[max(k - 1, 0)], nodes[min(k + 1, len(nodes) - 1)]
    if hi > lo:
        result = optimize.minimize_scalar(lambda x: -objective(x), bounds=(lo, hi), method="bounded",
                                          options={"xatol": XATOL})
        best = max(best, float(-result.fun))
    return best


@lru_cache(maxsize=32)
def _profile_grid(m: Measure, n_grid: int):
    t = np.linspace(0.0, 0.5, n_grid + 1)[1:]
    return t, np.asarray(isoperimetric_profile(m, t), dtype=float)


def beta_values(m: Measure, s_values: Sequence[float], n_grid: int = T_GRID) -> List[float]:
    """β on many s, sharing one evaluation of Ĩ on a t grid of (0, 1/2]"""
    grid, profile = _profile_grid(m, n_grid)
    out = []
    for s in s_values:
        s = float(s)
        if not s > 0.0:
            raise DomainError("s", s, "(0, inf)")
        if s >= 0.5:
            out.append(0.0)
            continue
        later = grid > s
        nodes = np.concatenate([[s], grid[later]])
        scores = np.concatenate([[0.0], (grid[later] - s) / profile[later]])

        def objective(t: float, s=s) -> float:
            return (t - s) / isoperimetric_profile(m, t)

        out.append(_refine_max(objective, nodes, scores))
    return out


@lru_cache(maxsize=4096)
def cheeger_beta(m: Measure, s: float, n_grid: int = T_GRID) -> float:
    """β(s) = sup_{s≤t≤1/2} (t-s)/Ĩ(t); zero from s = 1/2 on"""
    return beta_values(m, [s], n_grid)[0]


def i_tilde_from_beta(m: Measure, t: float, nodes: Optional[Tuple[np.ndarray, np.ndarray]] = None) -> float:
    """Ĩ(t) = sup_{0<s≤t} (t-s)/β(s), the dual transform of β.

    nodes is an optional precomputed (s, β(s)) table for the grid stage;
    the refinement always evaluates β exactly.
    """
    if not 0.0 < t <= 0.5:
        raise DomainError("t", t, "(0, 1/2]")
    if nodes is None:
        s = t * np.geomspace(1e-9, 1.0, S_GRID, endpoint=False)
        nodes = (s, np.asarray(beta_values(m, s)))
    s_nodes, beta_nodes = nodes
    keep = (s_nodes > 0.0) & (s_nodes < t)
    s = np.concatenate([s_nodes[keep], [t]])
    scores = np.concatenate([(t - s_nodes[keep]) / beta_nodes[keep], [0.0]])

    def objective(x: float) -> float:
        b = cheeger_beta(m, x)
        return (t - x) / b if b > 0.0 else 0.0

    return _refine_max(objective, s, scores)


def cheeger_rate(m: Measure, n_points: int = 1000, with_round_trip: bool = True) -> CheegerRate:
    """β on an evenly spaced s grid of (0, 1/2) and, optionally, the recovered profile on (0, 1/2]"""
    s_values = np.linspace(0.5 / n_points, 0.5, n_points, endpoint=False)
    rate = CheegerRate(measure=m.label, s_values=list(s_values), beta_values=beta_values(m, s_values))
    if with_round_trip:
        t_values = np.linspace(0.5 / n_points, 0.5, n_points)
        shared = np.union1d(np.geomspace(1e-9, 0.5, S_GRID * 8, endpoint=False), s_values)
        nodes = (shared, np.asarray(beta_values(m, shared)))
        rate.t_values = list(t_values)
        rate.i_tilde_values = list(np.asarray(isoperimetric_profile(m, t_values), dtype=float))
        rate.recovered_values = [i_tilde_from_beta(m, float(t), nodes)
                                 for t in progress(t_values, desc="dual transform", total=n_points)]
        logger.info(f"{m.label}: beta/profile round-trip residual {rate.round_trip_residual:.3e}")
    return rate


def _require_median_zero(u: PiecewiseFunction, m: Measure) -> None:
    if not has_median_zero(u, m):
        raise DomainError("u", "median", "functions with μ-median 0")


def vanishes_near_origin(u: PiecewiseFunction) -> bool:
    """0 ∉ supp u: u ≡ 0 on a neighbourhood of the origin"""
    xs, ys = u.breakpoints, u.values
    left = [i for i, x in enumerate(xs) if x < 0.0]
    right = [i for i, x in enumerate(xs) if x > 0.0]
    left_value = ys[left[-1]] if left else ys[0]
    right_value = ys[right[0]] if right else ys[-1]
    centre = float(u(0.0))
    return left_value == 0.0 and right_value == 0.0 and centre == 0.0


def check_weak_cheeger(u: PiecewiseFunction, m: Measure, s_grid: Sequence[float]) -> InequalityReport:
    """∫|u|dμ ≤ β(s)∫|u′|dμ + s·Osc(u) for every s of the grid"""
    _require_median_zero(u, m)
    mass, slope, osc = integral_abs(u, m), integral_abs_derivative(u, m), oscillation(u)
    report = InequalityReport(name="weak-cheeger", measure=m.label)
    for s in s_grid:
        beta = cheeger_beta(m, float(s))
        rhs = beta * slope + s * osc
        report.rows.append(InequalityRow(s=s, beta=beta, lhs=mass, rhs=rhs, margin=rhs - mass))
    return report


def asymmetry_integral(u: PiecewiseFunction, m: Measure) -> float:
    """∫ ||u| - |u|^#| dμ = ∫_0^∞ μ(E_h^{|u|} △ (E_h^{|u|})^#) dh"""
    v = u.absolute()
    knots = [0.0] + [y for y in v.values if y > 0.0]
    if len(set(knots)) < 2:
        return 0.0
    return integrate_levels(lambda h: rearrangement_asymmetry(level_set(v, m, h)), knots)


def check_quantitative_cheeger(u: PiecewiseFunction, m: Measure, s_grid: Sequence[float],
                               c_prime: Optional[float] = None) -> InequalityReport:
    """β(s)Ψ(∫||u|-u^#|dμ) + ∫|u|dμ ≤ β(s)∫|u′|dμ + 2s·Osc(u), with Ψ(x) = c′x²/2"""
    _require_median_zero(u, m)
    if not vanishes_near_origin(u):
        raise DomainError("u", "support", "functions vanishing near the origin")
    if c_prime is None:
        origin_free_gate(m)
        c_prime = constant_c_prime(m)
    distance = asymmetry_integral(u, m)
    penalty = 0.5 * c_prime * distance * distance
    mass, slope, osc = integral_abs(u, m), integral_abs_derivative(u, m), oscillation(u)
    report = InequalityReport(name="quantitative-weak-cheeger", measure=m.label)
    for s in s_grid:
        beta = cheeger_beta(m, float(s))
        lhs = beta * penalty + mass
        rhs = beta * slope + 2.0 * s * osc
        report.rows.append(InequalityRow(s=s, beta=beta, lhs=lhs, rhs=rhs, margin=rhs - lhs))
    return report


def check_embedding(u: PiecewiseFunction, m: Measure, report: Optional[LemmaReport] = None) -> LemmaReport:
    """sup_h h·I(μ(u > h)) ≤ ∫|u′|dμ on both signed parts of a median-zero u"""
    _require_median_zero(u, m)
    report = report or LemmaReport(name="embedding")
    for part in (u.positive_part(), u.negative_part()):
        report.record(embedding_lhs(part, m), integral_abs_derivative(part, m))
    return report


def check_sum_asymmetry_lemma(u: PiecewiseFunction, m: Measure, h_grid: Sequence[float],
                              report: Optional[LemmaReport] = None) -> LemmaReport:
    """λ(E_h^{u⁺}) + λ(E_h^{u⁻}) ≥ λ(E_h^{|u|}) for h > 0, λ measured against the rearranged set"""
    _require_median_zero(u, m)
    report = report or LemmaReport(name="sum-asymmetry")
    positive, negative, absolute = u.positive_part(), u.negative_part(), u.absolute()
    for h in h_grid:
        if h <= 0.0:
            raise DomainError("h", h, "(0, inf)")
        whole = rearrangement_asymmetry(level_set(absolute, m, h))
        parts = rearrangement_asymmetry(level_set(positive, m, h)) + rearrangement_asymmetry(level_set(negative, m, h))
        report.record(whole, parts)
    return report


def _crossing_levels(u: PiecewiseFunction, v: PiecewiseFunction) -> list:
    """Heights where the graphs of u and v meet; kinks of h ↦ μ(E_h^u △ E_h^v)"""
    difference = u.minus(v).with_zero_crossings()
    return [float(u(x)) for x, y in zip(difference.breakpoints, difference.values) if y == 0.0]


def check_level_jensen_lemma(u: PiecewiseFunction, v: PiecewiseFunction, m: Measure,
                             psi: Callable[[float], float] = lambda x: x * x,
                             report: Optional[LemmaReport] = None) -> LemmaReport:
    """Ψ(∫|u-v|dμ) ≤ ∫_0^1 Ψ(μ(E_h^u △ E_h^v)) dh for convex Ψ and 0 ≤ u, v ≤ 1"""
    for name, w in (("u", u), ("v", v)):
        if w.inf < 0.0 or w.sup > 1.0:
            raise DomainError(name, (w.inf, w.sup), "functions with values in [0, 1]")
    report = report or LemmaReport(name="level-jensen")
    knots = [0.0, 1.0] + list(u.values) + list(v.values) + _crossing_levels(u, v)
    rhs = integrate_levels(lambda h: psi(symmetric_difference_measure(level_set(u, m, h), level_set(v, m, h))), knots)
    report.record(psi(l1_distance(u, v, m)), rhs)
    return report
