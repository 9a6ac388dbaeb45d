# Sets Python Module
from internal.sets.python.set_models import MERGE_TOL, QuantileSet, ReferencePoints, SetShape
from internal.sets.python.interval_sets import (
    measure_of,
    perimeter,
    complement,
    mirror,
    symmetric_difference_measure,
    intersection_measure,
    reference_set,
    asymmetry,
    rearrangement_asymmetry,
    optimal_perimeter,
    deficit,
    contains_origin,
    from_real_intervals,
    reference_points,
    random_quantile_set,
)

__all__ = [
    "MERGE_TOL",
    "QuantileSet",
    "ReferencePoints",
    "SetShape",
    "measure_of",
    "perimeter",
    "complement",
    "mirror",
    "symmetric_difference_measure",
    "intersection_measure",
    "reference_set",
    "asymmetry",
    "rearrangement_asymmetry",
    "optimal_perimeter",
    "deficit",
    "contains_origin",
    "from_real_intervals",
    "reference_points",
    "random_quantile_set",
]
