"""
Extremals - closed-form extremal machinery
ψ_p, the threshold p₀, interval minimizers, the profile and the candidate families E1-E7
"""

import logging
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import optimize

from internal.common.python.exceptions import DomainError, NumericalFailure
from internal.extremals.python.extremal_models import (
    CandidateSet,
    DominationReport,
    Family,
    HypothesisReport,
    IntervalMinimizer,
    IntervalShape,
    MAP_FAMILIES,
    PsiShape,
)
from internal.measures.python.measures import Measure
from internal.sets.python.set_models import QuantileSet

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

RANGE_TOL = 1e-12
TIE_TOL = 1e-12
ROOT_XTOL = 1e-13


def psi(m: Measure, p: float, t: ArrayLike) -> ArrayLike:
    """ψ_p(t) = J(t) + J(p + t), the perimeter of an interval of measure p starting at quantile t"""
    if not 0.0 < p < 1.0:
        raise DomainError("p", p, "(0, 1)")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < -RANGE_TOL) or np.any(t_arr > 1.0 - p + RANGE_TOL):
        raise DomainError("t", t, f"[0, {1.0 - p:g}]")
    t_arr = np.clip(t_arr, 0.0, 1.0 - p)
    values = np.asarray(m.j(t_arr)) + np.asarray(m.j(np.minimum(t_arr + p, 1.0)))
    return float(values) if np.ndim(t) == 0 else values


def psi_shape(m: Measure, p: float, n_points: int = 1000) -> PsiShape:
    """Interior local minima and maxima of ψ_p from discrete difference signs"""
    grid = np.linspace(0.0, 1.0 - p, n_points + 1)
    values = psi(m, p, grid)
    steps = np.sign(np.round(np.diff(values), 15))
    minima, maxima = [], []
    previous = steps[0]
    for i in range(1, len(steps)):
        current = steps[i]
        if current == 0:
            continue
        if previous < 0 < current:
            minima.append(float(grid[i]))
        elif previous > 0 > current:
            maxima.append(float(grid[i]))
        previous = current
    return PsiShape(p=p, minima=minima, maxima=maxima, grid_step=float(grid[1] - grid[0]))


def find_p0(m: Measure) -> float:
    """Unique root in (0, 1/2) of g(p) = J(1-p) - 2J((1-p)/2)"""
    def g(p: float) -> float:
        return float(m.j(1.0 - p)) - 2.0 * float(m.j((1.0 - p) / 2.0))

    low, high = g(0.0), g(0.5)
    if not (low < 0.0 < high):
        raise NumericalFailure("find_p0", f"g has no sign change on (0, 1/2) for {m.label} (g(0)={low:.3e}, g(1/2)={high:.3e})")
    root = optimize.bisect(g, 0.0, 0.5, xtol=ROOT_XTOL)
    logger.debug(f"p0({m.label}) = {root:.15f}")
    return float(root)


def interval_minimizer(m: Measure, p: float) -> IntervalMinimizer:
    """Half-line (perimeter J(p)) against symmetric interval (2J((1-p)/2))"""
    if not 0.0 < p < 1.0:
        raise DomainError("p", p, "(0, 1)")
    half_line = float(m.j(p))
    symmetric = 2.0 * float(m.j((1.0 - p) / 2.0))
    if abs(half_line - symmetric) <= TIE_TOL:
        shape = IntervalShape.tie
    elif half_line < symmetric:
        shape = IntervalShape.half_line
    else:
        shape = IntervalShape.symmetric_interval
    return IntervalMinimizer(
        p=p,
        shape=shape,
        perimeter=min(half_line, symmetric),
        symmetric_perimeter=symmetric,
        half_line_perimeter=half_line,
    )


def isoperimetric_profile(m: Measure, p: ArrayLike) -> ArrayLike:
    """I(p) = 2J(min(p, 1-p)/2)"""
    p_arr = np.asarray(p, dtype=float)
    if np.any((p_arr < 0.0) | (p_arr > 1.0)):
        raise DomainError("p", p, "[0, 1]")
    values = 2.0 * np.asarray(m.j(np.minimum(p_arr, 1.0 - p_arr) / 2.0))
    return float(values) if np.ndim(p) == 0 else values


# ----------------------------------------------------------------------
# candidate families


def t_range(family: Family, p: float, lam: float) -> Optional[Tuple[float, float]]:
    """Admissible free parameter of E6/E7, None when empty"""
    base = Family(family).base
    if base is Family.E6:
        lo, hi = (max(0.0, p - lam), p) if lam <= p else (lam - p, 2.0 * p - lam)
    elif base is Family.E7:
        lo, hi = (0.0, lam) if lam <= p else (lam - p, p)
    else:
        return None
    if lo > hi + RANGE_TOL:
        return None
    return lo, max(lo, hi)


def family_valid(family: Family, p: float, lam: float, t: Optional[float] = None) -> bool:
    if not (-RANGE_TOL <= p <= 0.5 + RANGE_TOL and -RANGE_TOL <= lam <= 2.0 * p + RANGE_TOL):
        return False
    base = Family(family).base
    if base in (Family.E1, Family.E4):
        return True
    if base is Family.E2:
        return lam <= p + RANGE_TOL
    if base in (Family.E3, Family.E5):
        return lam >= p - RANGE_TOL
    bounds = t_range(base, p, lam)
    if bounds is None or t is None:
        return False
    return bounds[0] - RANGE_TOL <= t <= bounds[1] + RANGE_TOL


def candidate_endpoints(family: Family, p: float, lam: float, t: Optional[float] = None) -> List[float]:
    """Quantile endpoints of the family; mirrored variants reflect through 1/2"""
    family = Family(family)
    base = family.base
    if base is Family.E1:
        points = [lam / 4, p / 2 + lam / 4, 1 - p / 2 - lam / 4, 1 - lam / 4]
    elif base is Family.E2:
        points = [0.0, (p + lam) / 2, 1 - (p - lam) / 2, 1.0]
    elif base is Family.E3:
        points = [(lam - p) / 2, (lam + p) / 2]
    elif base is Family.E4:
        points = [0.0, p / 2 - lam / 4, 0.5 - lam / 4, 0.5 + lam / 4, 1 - p / 2 + lam / 4, 1.0]
    elif base is Family.E5:
        points = [0.0, p - lam / 2, 0.5 - lam / 4, 0.5 + lam / 4]
    elif base is Family.E6:
        points = [(p - t) / 2, p / 2 + lam / 4, 1 - p / 2 - lam / 4, 1 - (lam + t - p) / 2]
    else:
        points = [(lam - t) / 2, (p + lam) / 2, 1 - (p - t) / 2, 1.0]
    if family.mirrored:
        points = [1.0 - x for x in reversed(points)]
    return [min(max(x, 0.0), 1.0) for x in points]


def candidate_perimeter(m: Measure, family: Family, p: ArrayLike, lam: ArrayLike,
                        t: Optional[ArrayLike] = None) -> ArrayLike:
    """Closed-form perimeters; mirrored variants share the base value"""
    base = Family(family).base
    p = np.asarray(p, dtype=float)
    lam = np.asarray(lam, dtype=float)

    def J(x):
        return np.asarray(m.j(np.clip(x, 0.0, 1.0)))

    if base is Family.E1:
        value = 2 * J(lam / 4) + 2 * J(p / 2 + lam / 4)
    elif base is Family.E2:
        value = J((p + lam) / 2) + J((p - lam) / 2)
    elif base is Family.E3:
        value = J((lam + p) / 2) + J((lam - p) / 2)
    elif base is Family.E4:
        value = 2 * J(p / 2 - lam / 4) + 2 * J(0.5 - lam / 4)
    elif base is Family.E5:
        value = J(p - lam / 2) + 2 * J(0.5 - lam / 4)
    elif base is Family.E6:
        t = np.asarray(t, dtype=float)
        value = J((p - t) / 2) + J((lam + t - p) / 2) + 2 * J(p / 2 + lam / 4)
    else:
        t = np.asarray(t, dtype=float)
        value = J((lam - t) / 2) + J((p + lam) / 2) + J((p - t) / 2)
    return float(value) if np.ndim(value) == 0 else value


def candidate(m: Measure, family: Family, p: float, lam: float, t: Optional[float] = None) -> CandidateSet:
    """The family realized at (p, λ[, t]) as a QuantileSet"""
    family = Family(family)
    if family.has_parameter and t is None:
        raise DomainError("t", t, f"a value in the admissible range of {family.value}")
    if not family_valid(family, p, lam, t):
        raise DomainError("(p, lambda, t)", (p, lam, t), f"the validity range of {family.value}")
    quantile_set = QuantileSet(endpoints=candidate_endpoints(family, p, lam, t))
    return CandidateSet(
        family=family,
        p=p,
        lam=lam,
        t=t,
        set=quantile_set,
        perimeter=candidate_perimeter(m, family, p, lam, t),
    )


def candidate_menu(p: float, lam: float, origin_free: bool = False) -> Tuple[Family, ...]:
    """Families among which the constrained minimum is attained"""
    if origin_free:
        if lam <= p:
            return (Family.E1, Family.E2)
        if lam <= 1.0 - p:
            return (Family.E1, Family.E3)
        return (Family.E1,)
    if lam <= p:
        return (Family.E1, Family.E2, Family.E4)
    return (Family.E1, Family.E3, Family.E4)


def min_candidate(m: Measure, p: float, lam: float, origin_free: bool = False) -> Tuple[Family, float]:
    """Argmin over the menu; ties go to the lowest family index"""
    if not (0.0 <= lam <= 2.0 * p + RANGE_TOL and 2.0 * p <= 1.0 + RANGE_TOL):
        raise DomainError("(p, lambda)", (p, lam), "0 <= lambda <= 2p <= 1")
    best_family, best_value = None, np.inf
    for family in candidate_menu(p, lam, origin_free):
        value = candidate_perimeter(m, family, p, lam)
        if value < best_value - TIE_TOL:
            best_family, best_value = family, value
    return best_family, float(best_value)


# ----------------------------------------------------------------------
# hypothesis and domination checks


def prop_quant_hypotheses(m: Measure, n_points: int = 200, zero_probe: float = 1e-8,
                          zero_tol: float = 1e-3) -> HypothesisReport:
    """J′ concave on (0,1/2) by second differences, and J′(0⁺) ≈ 0"""
    grid = np.linspace(0.5 / n_points, 0.5, n_points)
    slopes = np.asarray(m.j_prime(grid))
    curvature = slopes[2:] - 2.0 * slopes[1:-1] + slopes[:-2]
    scale = max(1.0, float(np.max(np.abs(slopes))))
    concave = bool(np.all(curvature <= 1e-9 * scale))
    at_zero = float(m.j_prime(zero_probe))
    return HypothesisReport(
        j_prime_concave=concave,
        j_prime_at_zero=at_zero,
        holds=concave and abs(at_zero) <= zero_tol,
    )


def step3_dominations(m: Measure, n_grid: int = 24, n_t: int = 64, tol: float = 1e-12) -> DominationReport:
    """P(E5) > P(E4), P(E6) ≥ P(E1), P(E7) ≥ min(P(E2), P(E3)) over a (p, λ, t) grid"""
    report = DominationReport()
    for p in np.linspace(0.5 / n_grid, 0.5, n_grid):
        for lam in np.linspace(0.0, 2.0 * p, n_grid + 1):
            if lam >= p and lam < 2.0 * p:
                margin = candidate_perimeter(m, Family.E5, p, lam) - candidate_perimeter(m, Family.E4, p, lam)
                report.checked += 1
                report.worst_margin = min(report.worst_margin, margin)
                if margin <= 0.0:
                    report.e5_over_e4_violations += 1

            e1 = candidate_perimeter(m, Family.E1, p, lam)
            reference = candidate_perimeter(m, Family.E2 if lam <= p else Family.E3, p, lam)
            for family, floor, counter in (
                (Family.E6, e1, "e6_over_e1_violations"),
                (Family.E7, reference, "e7_over_e2_e3_violations"),
            ):
                bounds = t_range(family, p, lam)
                if bounds is None:
                    continue
                values = candidate_perimeter(m, family, p, lam, np.linspace(bounds[0], bounds[1], n_t))
                margins = np.asarray(values) - floor
                report.checked += margins.size
                report.worst_margin = min(report.worst_margin, float(np.min(margins)))
                setattr(report, counter, getattr(report, counter) + int(np.sum(margins < -tol)))
    logger.info(f"Step-3 dominations for {m.label}: {report.checked} checks, {report.violations} violations")
    return report


# ----------------------------------------------------------------------
# scan-line root finding


def scan_bisect(fn: Callable[[float], float], lo: float, hi: float, n_scan: int = 64,
                from_high: bool = False) -> Optional[float]:
    """First sign change of fn on a scan of [lo, hi], refined by bisection"""
    if hi <= lo:
        return None
    nodes = np.linspace(lo, hi, n_scan + 1)
    if from_high:
        nodes = nodes[::-1]
    previous_x, previous_v = nodes[0], fn(nodes[0])
    if previous_v == 0.0:
        return float(previous_x)
    for x in nodes[1:]:
        value = fn(x)
        if value == 0.0:
            return float(x)
        if np.sign(value) != np.sign(previous_v):
            a, b = sorted((previous_x, x))
            return float(optimize.bisect(fn, a, b, xtol=ROOT_XTOL))
        previous_x, previous_v = x, value
    return None


def _e4_minus_e3(m: Measure, p: float, lam: float) -> float:
    return candidate_perimeter(m, Family.E4, p, lam) - candidate_perimeter(m, Family.E3, p, lam)


def corner_constants(m: Measure) -> Tuple[Optional[float], Optional[float]]:
    """p₁ on λ = 2p and p₂ on λ = 1-p where P(E4) = P(E3)"""
    p1 = scan_bisect(lambda p: _e4_minus_e3(m, p, 2.0 * p), 1e-6, 1.0 / 3.0)
    p2 = scan_bisect(lambda p: _e4_minus_e3(m, p, 1.0 - p), 1.0 / 3.0, 0.5)
    if p1 is None or p2 is None:
        logger.warning(f"{m.label}: corner constants not found (p1={p1}, p2={p2})")
    return p1, p2


def lambda0_at(m: Measure, p: float) -> Optional[float]:
    """λ₀(p): E3 wins below, E4 above, for λ ≤ 1-p"""
    hi = min(2.0 * p, 1.0 - p)
    return scan_bisect(lambda lam: _e4_minus_e3(m, p, lam), p, hi)


def p0_at(m: Measure, lam: float) -> Optional[float]:
    """p₀(λ): E4 wins below, E3 above, for λ > 1-p"""
    return scan_bisect(lambda p: _e4_minus_e3(m, p, lam), lam / 2.0, 0.5, from_high=True)


def e1_e2_at(m: Measure, p: float) -> Optional[float]:
    """Interior λ in (0, p] where P(E1) = P(E2)"""
    def diff(lam: float) -> float:
        return candidate_perimeter(m, Family.E1, p, lam) - candidate_perimeter(m, Family.E2, p, lam)
    return scan_bisect(diff, p / 64.0, p)


def boundary_samples(fn: Callable[[float], Optional[float]], values: Sequence[float]) -> List[Tuple[float, float]]:
    samples = []
    for value in values:
        root = fn(float(value))
        if root is not None:
            samples.append((float(value), float(root)))
    return samples


def boundary_curve(m: Measure, family_a: Family, family_b: Family, values: Sequence[float],
                   along: str = "lambda", bounds: Optional[Callable[[float], Tuple[float, float]]] = None,
                   from_high: bool = False) -> List[Tuple[float, float]]:
    """Zero set of P(family_a) - P(family_b) sampled along scan lines.

    With along="lambda" each value is a p and the root is searched in λ;
    with along="p" each value is a λ and the root is searched in p.
    """
    if along not in ("lambda", "p"):
        raise DomainError("along", along, "'lambda' or 'p'")

    def default_bounds(value: float) -> Tuple[float, float]:
        return (0.0, 2.0 * value) if along == "lambda" else (value / 2.0, 0.5)

    bounds = bounds or default_bounds

    def root_at(value: float) -> Optional[float]:
        lo, hi = bounds(value)
        if along == "lambda":
            def diff(lam: float) -> float:
                return candidate_perimeter(m, family_a, value, lam) - candidate_perimeter(m, family_b, value, lam)
        else:
            def diff(p: float) -> float:
                return candidate_perimeter(m, family_a, p, value) - candidate_perimeter(m, family_b, p, value)
        return scan_bisect(diff, lo, hi, from_high=from_high)

    return boundary_samples(root_at, values)
