"""
Interval Sets - measure, perimeter, asymmetry and deficit of interval unions
All arithmetic happens in quantile coordinates, where μ becomes Lebesgue measure
"""

import logging
from typing import Iterable, Optional, Tuple

import numpy as np

from internal.common.python.exceptions import DomainError
from internal.measures.python.measures import Measure
from internal.sets.python.set_models import MERGE_TOL, QuantileSet, ReferencePoints, SetShape

logger = logging.getLogger(__name__)

HALF_TOL = 1e-12


def measure_of(S: QuantileSet) -> float:
    """μ(S): sum of the interval lengths"""
    e = np.asarray(S.endpoints, dtype=float)
    return float(np.sum(e[1::2] - e[0::2])) if e.size else 0.0


def perimeter(S: QuantileSet, m: Measure) -> float:
    """P(S) = Σ J(t_j); endpoints 0 and 1 contribute nothing"""
    if S.is_empty():
        return 0.0
    return float(np.sum(m.j(np.asarray(S.endpoints, dtype=float))))


def complement(S: QuantileSet) -> QuantileSet:
    return QuantileSet(endpoints=(0.0,) + S.endpoints + (1.0,))


def mirror(S: QuantileSet) -> QuantileSet:
    """Image under x ↦ -x, i.e. t ↦ 1 - t"""
    return QuantileSet(endpoints=[1.0 - t for t in reversed(S.endpoints)])


def _membership(S: QuantileSet, points: np.ndarray) -> np.ndarray:
    # inside iff an odd number of endpoints lies at or left of the point
    return np.searchsorted(np.asarray(S.endpoints, dtype=float), points, side="right") % 2 == 1


def _elementary_segments(S: QuantileSet, T: QuantileSet) -> Tuple[np.ndarray, np.ndarray]:
    cuts = np.unique(np.concatenate(([0.0, 1.0], S.endpoints, T.endpoints)))
    return cuts, 0.5 * (cuts[:-1] + cuts[1:])


def symmetric_difference_measure(S: QuantileSet, T: QuantileSet) -> float:
    """μ(S △ T)"""
    cuts, mids = _elementary_segments(S, T)
    xor = _membership(S, mids) ^ _membership(T, mids)
    return float(np.sum(np.diff(cuts)[xor]))


def intersection_measure(S: QuantileSet, T: QuantileSet) -> float:
    cuts, mids = _elementary_segments(S, T)
    both = _membership(S, mids) & _membership(T, mids)
    return float(np.sum(np.diff(cuts)[both]))


def reference_set(p: float, shape: SetShape) -> QuantileSet:
    """(-inf, -β_p) ∪ (β_p, inf) or (-α_p, α_p), in quantile coordinates"""
    if not 0.0 <= p <= 1.0:
        raise DomainError("p", p, "[0, 1]")
    if SetShape(shape) is SetShape.complement:
        return QuantileSet(endpoints=(0.0, p / 2.0, 1.0 - p / 2.0, 1.0))
    return QuantileSet(endpoints=((1.0 - p) / 2.0, (1.0 + p) / 2.0))


def asymmetry(S: QuantileSet, m: Optional[Measure] = None) -> float:
    """λ(S): distance to the measure-matched extremal shape.

    Complement-of-interval reference below 1/2, interval reference above,
    the smaller of the two at exactly 1/2. The references are defined
    through quantiles, so m is accepted for call-site symmetry with
    perimeter and deficit and does not change the value.
    """
    p = measure_of(S)
    to_complement = symmetric_difference_measure(S, reference_set(p, SetShape.complement))
    if p < 0.5 - HALF_TOL:
        return to_complement
    to_interval = symmetric_difference_measure(S, reference_set(p, SetShape.interval))
    if p > 0.5 + HALF_TOL:
        return to_interval
    return min(to_complement, to_interval)


def rearrangement_asymmetry(S: QuantileSet) -> float:
    """μ(S △ S^#), with S^# the complement-of-interval of equal measure"""
    return symmetric_difference_measure(S, reference_set(measure_of(S), SetShape.complement))


def optimal_perimeter(m: Measure, p: float) -> float:
    """Perimeter of the measure-matched extremal shape, 2J(min(p, 1-p)/2)"""
    return 2.0 * float(m.j(min(p, 1.0 - p) / 2.0))


def deficit(S: QuantileSet, m: Measure) -> float:
    """δ(S) = P(S) - P(extremal shape of the same measure)"""
    return perimeter(S, m) - optimal_perimeter(m, measure_of(S))


def contains_origin(S: QuantileSet) -> bool:
    """True when the quantile 1/2 is interior to a component"""
    return any(a < 0.5 < b for a, b in S.intervals)


def from_real_intervals(intervals: Iterable[Tuple[float, float]], m: Measure) -> QuantileSet:
    """Map real intervals (a, b), possibly infinite, through F and merge overlaps"""
    pairs = sorted((float(m.cdf(a)), float(m.cdf(b))) for a, b in intervals)
    merged = []
    for a, b in pairs:
        if b < a:
            raise DomainError("interval", (a, b), "a <= b")
        if merged and a <= merged[-1][1] + MERGE_TOL:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return QuantileSet.from_intervals(merged)


def reference_points(m: Measure, p: float) -> ReferencePoints:
    """α_p = -F⁻¹((1-p)/2), β_p = -F⁻¹(p/2), σ_p = -F⁻¹(p)"""
    if not 0.0 <= p <= 1.0:
        raise DomainError("p", p, "[0, 1]")
    return ReferencePoints(
        p=p,
        alpha_p=-float(m.quantile((1.0 - p) / 2.0)),
        beta_p=-float(m.quantile(p / 2.0)),
        sigma_p=-float(m.quantile(p)),
        alpha_quantile=(1.0 - p) / 2.0,
        beta_quantile=p / 2.0,
        sigma_quantile=p,
    )


def random_quantile_set(rng: np.random.Generator, max_components: int = 4,
                        origin_free: bool = False, max_measure: Optional[float] = None) -> QuantileSet:
    """Random union of at most max_components intervals.

    Half-lines appear with positive probability. With origin_free the
    component holding 1/2 is cut at 1/2; with max_measure the set is
    replaced by its complement when that brings the measure under the bound.
    """
    k = int(rng.integers(1, max_components + 1))
    points = np.sort(rng.uniform(0.0, 1.0, size=2 * k))
    if rng.uniform() < 0.25:
        points[0] = 0.0
    if rng.uniform() < 0.25:
        points[-1] = 1.0
    S = QuantileSet(endpoints=points)
    if origin_free and contains_origin(S):
        cut = []
        for a, b in S.intervals:
            if a < 0.5 < b:
                a, b = (a, 0.5) if 0.5 - a >= b - 0.5 else (0.5, b)
            cut.append((a, b))
        S = QuantileSet.from_intervals(cut)
    if max_measure is not None and measure_of(S) > max_measure:
        flipped = complement(S)
        if not (origin_free and contains_origin(flipped)):
            S = flipped
    return S
