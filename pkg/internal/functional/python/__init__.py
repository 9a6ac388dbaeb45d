# Functional Python Module
from internal.functional.python.functional_models import (
    CheegerRate,
    InequalityReport,
    InequalityRow,
    LemmaReport,
    PiecewiseFunction,
)
from internal.functional.python.piecewise import (
    coarea_integral,
    distribution_function,
    has_median_zero,
    indicator_approximation,
    integral_abs,
    integral_abs_derivative,
    integrate_levels,
    l1_distance,
    level_perimeter,
    level_set,
    median,
    oscillation,
    random_piecewise,
)
from internal.functional.python.rearrangement import (
    decreasing_rearrangement,
    embedding_lhs,
    rearranged_distribution,
    sharp_level_set,
    sharp_rearrangement,
    weak_lorentz_norm,
)
from internal.functional.python.cheeger import (
    asymmetry_integral,
    check_embedding,
    check_level_jensen_lemma,
    check_quantitative_cheeger,
    check_sum_asymmetry_lemma,
    check_weak_cheeger,
    beta_values,
    cheeger_beta,
    cheeger_rate,
    i_tilde_from_beta,
    vanishes_near_origin,
)

__all__ = [
    "CheegerRate",
    "InequalityReport",
    "InequalityRow",
    "LemmaReport",
    "PiecewiseFunction",
    "coarea_integral",
    "distribution_function",
    "has_median_zero",
    "indicator_approximation",
    "integral_abs",
    "integral_abs_derivative",
    "integrate_levels",
    "l1_distance",
    "level_perimeter",
    "level_set",
    "median",
    "oscillation",
    "random_piecewise",
    "decreasing_rearrangement",
    "embedding_lhs",
    "rearranged_distribution",
    "sharp_level_set",
    "sharp_rearrangement",
    "weak_lorentz_norm",
    "asymmetry_integral",
    "check_embedding",
    "check_level_jensen_lemma",
    "check_quantitative_cheeger",
    "check_sum_asymmetry_lemma",
    "check_weak_cheeger",
    "beta_values",
    "cheeger_beta",
    "cheeger_rate",
    "i_tilde_from_beta",
    "vanishes_near_origin",
]
