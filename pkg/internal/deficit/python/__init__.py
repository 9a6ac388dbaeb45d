# Deficit Python Module
from internal.deficit.python.deficit_models import DeficitConstants, DeficitRow
from internal.deficit.python.deficit import (
    nabla2_epsilon,
    infimum_j_second,
    constant_c,
    constant_c_prime,
    deficit_constants,
    deficit_lower_bound,
    anomalous_set,
    anomalous_example,
    anomalous_expansion,
    check_j_chain,
    deficit_table,
)

__all__ = [
    "DeficitConstants",
    "DeficitRow",
    "nabla2_epsilon",
    "infimum_j_second",
    "constant_c",
    "constant_c_prime",
    "deficit_constants",
    "deficit_lower_bound",
    "anomalous_set",
    "anomalous_example",
    "anomalous_expansion",
    "check_j_chain",
    "deficit_table",
]
