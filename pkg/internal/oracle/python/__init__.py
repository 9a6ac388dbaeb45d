# Oracle Python Module
from internal.oracle.python.oracle_models import (
    CellCheck,
    ClassificationReport,
    CorollaryReport,
    OracleConfig,
    OracleResult,
    ShiftingReport,
)
from internal.oracle.python.oracle import (
    brute_min_perimeter,
    classification_cells,
    discretization_bound,
    verify_classification,
    verify_interval_corollary,
    verify_shifting,
)

__all__ = [
    "CellCheck",
    "ClassificationReport",
    "CorollaryReport",
    "OracleConfig",
    "OracleResult",
    "ShiftingReport",
    "brute_min_perimeter",
    "classification_cells",
    "discretization_bound",
    "verify_classification",
    "verify_interval_corollary",
    "verify_shifting",
]
