# Extremals Python Module
from internal.extremals.python.extremal_models import (
    CandidateSet,
    DominationReport,
    Family,
    HypothesisReport,
    IntervalMinimizer,
    IntervalShape,
    MAP_FAMILIES,
    PsiShape,
    RegionMap,
)
from internal.extremals.python.extremals import (
    psi,
    psi_shape,
    find_p0,
    interval_minimizer,
    isoperimetric_profile,
    t_range,
    family_valid,
    candidate_endpoints,
    candidate_perimeter,
    candidate,
    candidate_menu,
    min_candidate,
    prop_quant_hypotheses,
    step3_dominations,
    corner_constants,
    lambda0_at,
    p0_at,
    e1_e2_at,
    boundary_curve,
    boundary_samples,
    scan_bisect,
)
from internal.extremals.python.region_map import region_map

__all__ = [
    "CandidateSet",
    "DominationReport",
    "Family",
    "HypothesisReport",
    "IntervalMinimizer",
    "IntervalShape",
    "MAP_FAMILIES",
    "PsiShape",
    "RegionMap",
    "psi",
    "psi_shape",
    "find_p0",
    "interval_minimizer",
    "isoperimetric_profile",
    "t_range",
    "family_valid",
    "candidate_endpoints",
    "candidate_perimeter",
    "candidate",
    "candidate_menu",
    "min_candidate",
    "prop_quant_hypotheses",
    "step3_dominations",
    "corner_constants",
    "lambda0_at",
    "p0_at",
    "e1_e2_at",
    "boundary_curve",
    "boundary_samples",
    "scan_bisect",
    "region_map",
]
