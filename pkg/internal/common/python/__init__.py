# Common Python Module
from internal.common.python.config import TOOL_VERSION, ToolkitConfig, toolkit_config
from internal.common.python.exceptions import (
    IsologconError,
    DomainError,
    NumericalFailure,
    HypothesisFailure,
    InfeasibleConstraintError,
)
from internal.common.python.logging_setup import configure_logging, progress

__all__ = [
    "TOOL_VERSION",
    "ToolkitConfig",
    "toolkit_config",
    "IsologconError",
    "DomainError",
    "NumericalFailure",
    "HypothesisFailure",
    "InfeasibleConstraintError",
    "configure_logging",
    "progress",
]
