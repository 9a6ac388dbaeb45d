"""
Oracle Models
Configuration and reports of the brute-force grid verifier
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field

from internal.sets.python.set_models import QuantileSet


class OracleConfig(BaseModel):
    """Grid resolution, component bound and constraint tolerances"""
    grid_n: int = 200
    max_components: int = 3
    measure_tol: Optional[float] = None
    asymmetry_tol: Optional[float] = None
    seed: int = 0

    def effective_measure_tol(self) -> float:
        return self.measure_tol if self.measure_tol is not None else 2.0 / self.grid_n

    def effective_asymmetry_tol(self) -> float:
        return self.asymmetry_tol if self.asymmetry_tol is not None else 2.0 / self.grid_n


class OracleResult(BaseModel):
    """Discrete minimum with a witness grid set"""
    p: float
    lambda_target: Optional[float] = None
    origin_free: bool = False
    min_perimeter: float
    witness: QuantileSet
    constraint_residuals: Tuple[float, Optional[float]]
    enumerated_count: int
    optimal_count: float
    tie: bool
    closed_form: Optional[float] = None
    closed_form_family: Optional[str] = None
    discretization_bound: float


class CellCheck(BaseModel):
    p: float
    lam: float
    origin_free: bool
    brute: float
    closed_form: float
    family: str
    gap: float
    bound: float
    ok: bool
    witness: List[float] = Field(default_factory=list)


class ClassificationReport(BaseModel):
    measure: str
    grid_n: int
    max_components: int
    cells: List[CellCheck] = Field(default_factory=list)

    @property
    def mismatches(self) -> List[CellCheck]:
        return [cell for cell in self.cells if not cell.ok]

    @property
    def max_gap(self) -> float:
        return max((cell.gap for cell in self.cells), default=0.0)


class ShiftingReport(BaseModel):
    """Outcome of randomized shifts, one counter per case"""
    measure: str
    trials: int
    strict: bool = True
    right_of_origin: int = 0
    left_of_origin: int = 0
    straddle_left_shift: int = 0
    straddle_right_shift: int = 0
    violations: int = 0
    non_strict: int = 0
    worst_increase: float = 0.0


class CorollaryReport(BaseModel):
    """Single-interval minimizers across measures p = c/grid_n"""
    measure: str
    grid_n: int
    p0: Optional[float] = None
    flip_p: Optional[float] = None
    shapes: List[Tuple[float, str]] = Field(default_factory=list)
