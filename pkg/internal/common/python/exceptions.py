"""
Isologcon Exceptions
Error types raised by the numerical library and mapped to CLI exit codes
"""

from typing import Any, Optional


class IsologconError(Exception):
    """Base error of the toolkit"""
    pass


class DomainError(IsologconError, ValueError):
    """Argument outside the domain of an operation"""

    def __init__(self, name: str, value: Any, allowed: str):
        self.name = name
        self.value = value
        self.allowed = allowed
        super().__init__(f"{name}={value!r} outside {allowed}")


class NumericalFailure(IsologconError):
    """A root, extremum or constant could not be located"""

    def __init__(self, operation: str, detail: str):
        self.operation = operation
        self.detail = detail
        super().__init__(f"{operation}: {detail}")


class HypothesisFailure(NumericalFailure):
    """A hypothesis of a bound does not hold numerically"""

    def __init__(self, operation: str, hypothesis: str, detail: Optional[str] = None):
        self.hypothesis = hypothesis
        super().__init__(operation, f"hypothesis '{hypothesis}' fails" + (f" ({detail})" if detail else ""))


class InfeasibleConstraintError(IsologconError):
    """No grid set satisfies the oracle constraints"""

    def __init__(self, grid_n: int, measure_tol: float, asymmetry_tol: Optional[float], detail: str = ""):
        self.grid_n = grid_n
        self.measure_tol = measure_tol
        self.asymmetry_tol = asymmetry_tol
        message = f"infeasible constraints on grid_n={grid_n} (measure_tol={measure_tol}, asymmetry_tol={asymmetry_tol})"
        if detail:
            message += f": {detail}"
        super().__init__(message)
