"""
Region Map - which candidate family attains the minimal perimeter at (p, λ)
"""

import logging

import numpy as np

from internal.common.python.exceptions import DomainError
from internal.extremals.python.extremal_models import Family, MAP_FAMILIES, RegionMap
from internal.extremals.python.extremals import (
    RANGE_TOL,
    TIE_TOL,
    boundary_samples,
    candidate_perimeter,
    corner_constants,
    e1_e2_at,
    lambda0_at,
    p0_at,
)
from internal.measures.python.measures import Measure

logger = logging.getLogger(__name__)


def _family_mask(family: Family, p: np.ndarray, lam: np.ndarray, origin_free: bool) -> np.ndarray:
    feasible = lam <= 2.0 * p + RANGE_TOL
    if family is Family.E1:
        return feasible
    if family is Family.E2:
        return feasible & (lam <= p + RANGE_TOL)
    if family is Family.E3:
        mask = feasible & (lam > p + RANGE_TOL)
        if origin_free:
            mask &= lam <= 1.0 - p + RANGE_TOL
        return mask
    # E4 contains the origin whenever λ > 0
    if origin_free:
        return np.zeros_like(feasible)
    return feasible


def region_map(m: Measure, grid_n: int, origin_free: bool = False, with_curves: bool = True) -> RegionMap:
    """Label every node of the (p, λ) triangle by its minimal-perimeter family.

    Nodes are p = i/(2·grid_n), λ = j/grid_n. Ties break toward the lowest
    family index and are flagged.
    """
    if grid_n < 8:
        raise DomainError("grid_n", grid_n, "integers >= 8")
    logger.info(f"Building region map for {m.label} (grid_n={grid_n}, origin_free={origin_free})")

    p_values = np.linspace(0.0, 0.5, grid_n + 1)
    lam_values = np.linspace(0.0, 1.0, grid_n + 1)
    P, L = np.meshgrid(p_values, lam_values, indexing="ij")
    feasible = L <= 2.0 * P + RANGE_TOL

    perimeters = {}
    stacked = []
    for family in MAP_FAMILIES:
        # clip keeps the closed forms inside [0, 1] off-range; masked below
        values = np.asarray(candidate_perimeter(m, family, P, np.minimum(L, 2.0 * P)))
        values = np.where(_family_mask(family, P, L, origin_free), values, np.nan)
        perimeters[family] = values
        stacked.append(np.where(np.isnan(values), np.inf, values))
    stacked = np.stack(stacked)

    best = np.argmin(stacked, axis=0)
    best_value = np.min(stacked, axis=0)
    near_best = np.sum(stacked <= best_value[None, :, :] + TIE_TOL, axis=0)
    labels = np.array([family.value for family in MAP_FAMILIES], dtype=object)
    winner = np.where(feasible, labels[best], "")
    tie = feasible & (near_best > 1)

    result = RegionMap(
        measure=m.label,
        grid_n=grid_n,
        origin_free=origin_free,
        p_values=p_values,
        lam_values=lam_values,
        winner=winner,
        tie=tie,
        perimeters=perimeters,
    )
    if with_curves and not origin_free:
        attach_curves(m, result)
    return result


def attach_curves(m: Measure, result: RegionMap) -> None:
    """Corner constants, λ₀(p) on [p₁, p₂], p₀(λ) on [1-p₂, 1) and the E1/E2 line"""
    p1, p2 = corner_constants(m)
    result.p1, result.p2 = p1, p2
    if p1 is not None and p2 is not None:
        columns = result.p_values[(result.p_values > p1) & (result.p_values < p2)]
        result.lambda0_curve = boundary_samples(lambda p: lambda0_at(m, p), columns)
        rows = result.lam_values[(result.lam_values > 1.0 - p2) & (result.lam_values < 1.0)]
        result.p0_curve = boundary_samples(lambda lam: p0_at(m, lam), rows)
    positive = result.p_values[result.p_values > 0.0]
    result.e1_e2_curve = boundary_samples(lambda p: e1_e2_at(m, p), positive)
    logger.info(
        f"Region map curves for {m.label}: p1={p1}, p2={p2}, "
        f"{len(result.lambda0_curve)} lambda0 samples, {len(result.p0_curve)} p0 samples, "
        f"{len(result.e1_e2_curve)} E1/E2 samples"
    )
