# Measures Python Module
from internal.measures.python.measure_models import MeasureKind, MeasureSpec
from internal.measures.python.measures import (
    Measure,
    GeneralizedCauchy,
    TwoSidedExponential,
    SubExponential,
    CustomMeasure,
    make_measure,
    measure_from_spec,
    j_eval,
    lipschitz_constant,
    in_family_f,
    exp_interval_perimeter,
)

__all__ = [
    "MeasureKind",
    "MeasureSpec",
    "Measure",
    "GeneralizedCauchy",
    "TwoSidedExponential",
    "SubExponential",
    "CustomMeasure",
    "make_measure",
    "measure_from_spec",
    "j_eval",
    "lipschitz_constant",
    "in_family_f",
    "exp_interval_perimeter",
]
